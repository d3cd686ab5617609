"""
Synthetic Scenarios
===================

Small deterministic traffic scenes for tests, demos and the acceptance checks. All run at
10 Hz with constant-velocity agents unless noted.

    crossing             two cars approaching a corner hidden behind a building
    merging              an on-ramp car merging beside a truck on the main road
    car_following        car - truck - car platoon; the lead car brakes
    occluding_truck      a pedestrian stepping out from behind a parked truck
    dense_intersection   seeded four-arm intersection with many vehicles and pedestrians
"""

from __future__ import annotations

import math
from collections.abc import Callable
from pathlib import Path

import numpy as np

from occlusion_risk.ingest.map_file import write_map
from occlusion_risk.ingest.trajectory import write_trajectory
from occlusion_risk.models.scene import AgentClass, AgentState, OccluderPolygon, Scenario, build_scenario

TICK = 0.1

FOOTPRINT = {
    AgentClass.CAR: (4.5, 1.8),
    AgentClass.TRUCK: (10.0, 2.5),
    AgentClass.BUS: (12.0, 2.6),
    AgentClass.PEDESTRIAN: (0.5, 0.5),
    AgentClass.BICYCLE: (1.8, 0.6),
}


def straight_track(
    agent_id: str,
    agent_class: AgentClass,
    start: tuple[float, float],
    velocity: tuple[float, float],
    frames: range,
    *,
    heading: float | None = None,
) -> list[AgentState]:
    """Constant-velocity track; heading follows the velocity unless given."""
    length, width = FOOTPRINT[agent_class]
    if heading is None:
        heading = math.atan2(velocity[1], velocity[0]) if velocity != (0.0, 0.0) else 0.0
    first = frames[0]
    return [
        AgentState(
            agent_id=agent_id,
            frame=frame,
            position=(
                start[0] + velocity[0] * (frame - first) * TICK,
                start[1] + velocity[1] * (frame - first) * TICK,
            ),
            velocity=velocity,
            heading=heading,
            length=length,
            width=width,
            agent_class=agent_class,
        )
        for frame in frames
    ]


def _square(name: str, x0: float, y0: float, x1: float, y1: float) -> OccluderPolygon:
    return OccluderPolygon(name=name, vertices=((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


def crossing(frames: int = 50) -> Scenario:
    """Eastbound and northbound cars meet at the origin; a building fills the south-west corner."""
    span = range(frames)
    states = straight_track("car_east", AgentClass.CAR, (-40.0, -2.0), (8.0, 0.0), span)
    states += straight_track("car_north", AgentClass.CAR, (2.0, -40.0), (0.0, 8.0), span)
    return build_scenario(states, [_square("building_sw", -40.0, -40.0, -5.0, -5.0)], TICK)


def merging(frames: int = 50) -> Scenario:
    """A ramp car converges on the main road; a truck in the right lane hides it from the car behind."""
    span = range(frames)
    angle = math.radians(15.0)
    ramp_v = (9.0 * math.cos(angle), 9.0 * math.sin(angle))
    states = straight_track("car_main", AgentClass.CAR, (-30.0, 0.0), (10.0, 0.0), span)
    states += straight_track("truck_main", AgentClass.TRUCK, (-12.0, -3.5), (9.0, 0.0), span)
    states += straight_track("car_ramp", AgentClass.CAR, (-20.0, -12.0), ramp_v, span)
    return build_scenario(states, [], TICK)


def car_following(frames: int = 50) -> Scenario:
    """Lead car braking at 0.5 m/s^2 in front of a truck, followed by a car that cannot see past it."""
    states = []
    for frame in range(frames):
        t = frame * TICK
        speed = max(0.0, 10.0 - 0.5 * t)
        travelled = 10.0 * t - 0.25 * t * t if speed > 0.0 else 100.0
        length, width = FOOTPRINT[AgentClass.CAR]
        states.append(
            AgentState(
                agent_id="car_lead",
                frame=frame,
                position=(30.0 + travelled, 0.0),
                velocity=(speed, 0.0),
                heading=0.0,
                length=length,
                width=width,
                agent_class=AgentClass.CAR,
            )
        )
    states += straight_track("truck_mid", AgentClass.TRUCK, (15.0, 0.0), (10.0, 0.0), range(frames))
    states += straight_track("car_follow", AgentClass.CAR, (0.0, 0.0), (10.0, 0.0), range(frames))
    return build_scenario(states, [], TICK)


def occluding_truck(frames: int = 40) -> Scenario:
    """A parked truck at the curb; a pedestrian steps out from behind it into the car's path."""
    span = range(frames)
    states = straight_track("car", AgentClass.CAR, (-30.0, 0.0), (8.0, 0.0), span)
    states += straight_track("truck_parked", AgentClass.TRUCK, (0.0, 3.5), (0.0, 0.0), span, heading=0.0)
    states += straight_track("ped", AgentClass.PEDESTRIAN, (6.0, 5.0), (0.0, -1.4), span)
    return build_scenario(states, [], TICK)


# ═══════════════════════════════════════════════════════════════════════════
# Dense intersection
# ═══════════════════════════════════════════════════════════════════════════

# travel direction per arm; lanes sit to the right of the centerline (right-hand traffic)
_ARMS = {
    "e": (1.0, 0.0),
    "w": (-1.0, 0.0),
    "n": (0.0, 1.0),
    "s": (0.0, -1.0),
}
_LANE_OFFSETS = (2.0, 5.5)


def dense_intersection(
    seed: int = 0,
    n_vehicles: int = 32,
    n_vru: int = 8,
    frames: int = 40,
) -> Scenario:
    """
    Seeded four-arm intersection with two lanes per direction.

    Vehicles queue on the eight approach lanes 12 m apart and drive straight through at a
    per-lane speed of 4-8 m/s; one in five is a truck. Pedestrians walk along the four
    crosswalks at 1-1.6 m/s. Everything stays within a few tens of meters of the center.
    """
    rng = np.random.default_rng(seed)
    lanes = [(arm, offset) for arm in _ARMS for offset in _LANE_OFFSETS]
    states: list[AgentState] = []
    span = range(frames)

    lane_speed = {lane: float(rng.uniform(4.0, 8.0)) for lane in lanes}
    for k in range(n_vehicles):
        arm, offset = lanes[k % len(lanes)]
        slot = k // len(lanes)
        (dx, dy), speed = _ARMS[arm], lane_speed[(arm, offset)]
        back = 8.0 + 12.0 * slot + float(rng.uniform(0.0, 2.0))
        # offset along the right-hand normal (dy, -dx)
        start = (-dx * back + dy * offset, -dy * back - dx * offset)
        agent_class = AgentClass.TRUCK if rng.random() < 0.2 else AgentClass.CAR
        states += straight_track(f"veh_{k:03d}", agent_class, start, (dx * speed, dy * speed), span)

    corners = [(-9.0, -9.0), (9.0, -9.0), (9.0, 9.0), (-9.0, 9.0)]
    for k in range(n_vru):
        a = corners[k % 4]
        b = corners[(k + 1) % 4]
        if k % 8 >= 4:
            a, b = b, a
        speed = float(rng.uniform(1.0, 1.6))
        length = math.hypot(b[0] - a[0], b[1] - a[1])
        v = (speed * (b[0] - a[0]) / length, speed * (b[1] - a[1]) / length)
        states += straight_track(f"ped_{k:03d}", AgentClass.PEDESTRIAN, a, v, span)

    blocks = [
        _square("block_sw", -40.0, -40.0, -12.0, -12.0),
        _square("block_se", 12.0, -40.0, 40.0, -12.0),
        _square("block_ne", 12.0, 12.0, 40.0, 40.0),
        _square("block_nw", -40.0, 12.0, -12.0, 40.0),
    ]
    return build_scenario(states, blocks, TICK)


GENERATORS: dict[str, Callable[..., Scenario]] = {
    "crossing": crossing,
    "merging": merging,
    "car_following": car_following,
    "occluding_truck": occluding_truck,
    "dense_intersection": dense_intersection,
}


def write_synthetic(kind: str, out_dir: str | Path, **kwargs) -> tuple[Path, Path]:
    """Generate ``kind`` and write ``{kind}.csv`` and ``{kind}_map.json`` into ``out_dir``."""
    try:
        generator = GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown synthetic scenario '{kind}' (choose from {', '.join(GENERATORS)})") from None
    scenario = generator(**kwargs)
    out_dir = Path(out_dir)
    trajectory = write_trajectory(scenario, out_dir / f"{kind}.csv")
    map_path = write_map(scenario.occluders, out_dir / f"{kind}_map.json")
    return trajectory, map_path


__all__ = [
    "GENERATORS",
    "car_following",
    "crossing",
    "dense_intersection",
    "merging",
    "occluding_truck",
    "straight_track",
    "write_synthetic",
]
