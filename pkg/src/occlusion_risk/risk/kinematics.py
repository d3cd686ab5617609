"""
Pair Kinematics
===============

Relative motion quantities of two agents at one frame, and the per-agent acceleration
estimate the constant-acceleration reachable sets need.

    d        |p_i - p_j|
    delta_v  |v_i - v_j|
    v_rel    (dp . dv) / max(d, clamp)   negative = approaching
    theta    angle between v_i and v_j   (0 when either speed is zero)
    i_side   theta strictly inside (45 deg, 135 deg)
    i_over   reachable sets overlap
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from occlusion_risk.models.run_config import RiskConfig
from occlusion_risk.models.scene import AgentState, Scenario, Vector
from occlusion_risk.risk.reachable import ReachableRegion, overlap_indicator, reachable_region, regions_may_overlap

SIDE_MIN = math.radians(45.0)
SIDE_MAX = math.radians(135.0)
ZERO: Vector = (0.0, 0.0)


@dataclass(frozen=True)
class PairKinematics:
    d: float
    delta_v: float
    v_rel: float
    theta: float
    i_side: bool
    i_over: bool


def is_side_on(theta: float) -> bool:
    """Side-on interaction: theta in the open interval (45 deg, 135 deg)."""
    return SIDE_MIN < theta < SIDE_MAX


def velocity_angle(v_i: Vector, v_j: Vector) -> float:
    speed_i = math.hypot(*v_i)
    speed_j = math.hypot(*v_j)
    if speed_i == 0.0 or speed_j == 0.0:
        return 0.0
    cosine = (v_i[0] * v_j[0] + v_i[1] * v_j[1]) / (speed_i * speed_j)
    return math.acos(max(-1.0, min(1.0, cosine)))


def pair_kinematics(
    state_i: AgentState,
    state_j: AgentState,
    config: RiskConfig,
    *,
    acceleration_i: Vector = ZERO,
    acceleration_j: Vector = ZERO,
    region_i: ReachableRegion | None = None,
    region_j: ReachableRegion | None = None,
) -> PairKinematics:
    """
    Kinematics of the ordered pair (i, j); both states must be at the same frame.

    Example:
        p_i (10, 0), p_j (0, 0), v_i (-2, 0), v_j (0, 0) -> d 10, delta_v 2, v_rel -2
    """
    dpx = state_i.position[0] - state_j.position[0]
    dpy = state_i.position[1] - state_j.position[1]
    dvx = state_i.velocity[0] - state_j.velocity[0]
    dvy = state_i.velocity[1] - state_j.velocity[1]

    d = math.hypot(dpx, dpy)
    delta_v = math.hypot(dvx, dvy)
    v_rel = (dpx * dvx + dpy * dvy) / max(d, config.min_distance_clamp)
    theta = velocity_angle(state_i.velocity, state_j.velocity)

    if region_i is None:
        region_i = reachable_region(state_i, config, acceleration_i)
    if region_j is None:
        region_j = reachable_region(state_j, config, acceleration_j)
    i_over = regions_may_overlap(region_i, region_j) and overlap_indicator(region_i, region_j)

    return PairKinematics(
        d=d,
        delta_v=delta_v,
        v_rel=v_rel,
        theta=theta,
        i_side=is_side_on(theta),
        i_over=i_over,
    )


def estimate_accelerations(scenario: Scenario) -> dict[tuple[int, str], Vector]:
    """
    Per-state acceleration from each agent's velocity history.

    Central differences between neighbouring appearances, one-sided at the ends of a
    track, zero for agents that appear only once.
    """
    accelerations: dict[tuple[int, str], Vector] = {}
    for agent_id in scenario.agent_ids:
        track = scenario.track(agent_id)
        if len(track) < 2:
            for state in track:
                accelerations[(state.frame, agent_id)] = ZERO
            continue
        times = np.array([s.frame for s in track], dtype=float) * scenario.tick_seconds
        velocity = np.array([s.velocity for s in track], dtype=float)
        gradient = np.gradient(velocity, times, axis=0, edge_order=1)
        for state, (ax, ay) in zip(track, gradient):
            accelerations[(state.frame, agent_id)] = (float(ax), float(ay))
    return accelerations


__all__ = [
    "PairKinematics",
    "estimate_accelerations",
    "is_side_on",
    "pair_kinematics",
    "velocity_angle",
]
