"""
Risk Weights
============

The instantaneous risk weight

    P = min(1, max(0, k * delta_v / max(d, clamp)^2))

with the coefficient k picked by a two-stage hierarchy:

    either agent stationary (speed <= motion_threshold):
        v_rel < 0  -> k_static_approach   (0.05)
        otherwise  -> k_static_separate   (0.01)

    both moving:
        i_over and i_side              -> k_overlap_side     (3)
        i_over and not i_side          -> k_overlap_noside   (1)
        no overlap, v_rel < 0, i_side  -> k_approach_side    (0.4)
        no overlap, v_rel < 0          -> k_approach_noside  (0.2)
        no overlap, v_rel >= 0         -> k_separate         (0.01)

P does not depend on who sees whom, so ``PairWeightTable`` computes it once per
scenario/config for every eligible ordered pair and every frame where both agents are
present. Each entry also records where the pair's "observer j sees target i" bit lives in
the per-frame sight matrices, so the risk of a whole run is a single masked lookup.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from occlusion_risk.models.run_config import PairFilter, RiskConfig
from occlusion_risk.models.scene import Scenario, pair_type
from occlusion_risk.risk.kinematics import PairKinematics, estimate_accelerations, pair_kinematics
from occlusion_risk.risk.reachable import reachable_region

logger = logging.getLogger(__name__)


def select_k(kin: PairKinematics, speed_i: float, speed_j: float, config: RiskConfig) -> float:
    """Coefficient k for one pair at one frame."""
    if speed_i <= config.motion_threshold or speed_j <= config.motion_threshold:
        return config.k_static_approach if kin.v_rel < 0.0 else config.k_static_separate
    if kin.i_over:
        return config.k_overlap_side if kin.i_side else config.k_overlap_noside
    if kin.v_rel < 0.0:
        return config.k_approach_side if kin.i_side else config.k_approach_noside
    return config.k_separate


def instantaneous_weight(kin: PairKinematics, k: float, config: RiskConfig) -> float:
    """
    Clamped risk weight in [0, 1].

    Example:
        k 3, delta_v 5, d 10 -> 0.15
    """
    d = max(kin.d, config.min_distance_clamp)
    return min(1.0, max(0.0, k * kin.delta_v / (d * d)))


@dataclass(frozen=True, eq=False)
class FrameLayout:
    """Offsets of the per-frame sight matrices inside one flat boolean vector."""

    frames: tuple[int, ...]
    ids: dict[int, list[str]]
    offsets: dict[int, int]
    size: int

    @classmethod
    def of(cls, scenario: Scenario) -> "FrameLayout":
        ids, offsets, cursor = {}, {}, 0
        for frame in scenario.frames:
            present = [s.agent_id for s in scenario.agents_at(frame)]
            ids[frame] = present
            offsets[frame] = cursor
            cursor += len(present) ** 2
        return cls(frames=scenario.frames, ids=ids, offsets=offsets, size=cursor)

    def flatten(self, matrices: dict[int, np.ndarray]) -> np.ndarray:
        """Concatenate per-frame (n, n) sight matrices (rows = observers) into one vector."""
        flat = np.zeros(self.size, dtype=bool)
        for frame, matrix in matrices.items():
            n = len(self.ids[frame])
            if n:
                start = self.offsets[frame]
                flat[start:start + n * n] = np.asarray(matrix, dtype=bool).reshape(-1)
        return flat


class PairWeightTable:
    """
    Visibility-independent risk weights for every eligible ordered pair (i, j).

    Entries are stored pair-major in flat arrays (CSR style):

        pairs[k]                      (i, j) for pair k
        pair_ptr[k]:pair_ptr[k + 1]   slice of that pair's entries
        frame_pos                     index into scenario.frames of each entry
        weight                        P at that entry
        sight_index                   flat index of "j sees i" in a FrameLayout vector
    """

    def __init__(
        self,
        scenario: Scenario,
        config: RiskConfig,
        pair_filter: PairFilter = PairFilter.BOTH,
    ) -> None:
        self.scenario = scenario
        self.config = config
        self.pair_filter = pair_filter
        self.layout = FrameLayout.of(scenario)

        accelerations = estimate_accelerations(scenario)
        entries: dict[tuple[str, str], list[tuple[int, float, int]]] = {}

        for frame_pos, frame in enumerate(scenario.frames):
            states = scenario.agents_at(frame)
            n = len(states)
            if n < 2:
                continue
            regions = [
                reachable_region(s, config, accelerations[(frame, s.agent_id)]) for s in states
            ]
            offset = self.layout.offsets[frame]
            for a in range(n):
                for b in range(a + 1, n):
                    kind = pair_type(states[a].agent_class, states[b].agent_class)
                    if not pair_filter.accepts(kind):
                        continue
                    kin = pair_kinematics(
                        states[a], states[b], config, region_i=regions[a], region_j=regions[b]
                    )
                    k = select_k(kin, states[a].speed, states[b].speed, config)
                    weight = instantaneous_weight(kin, k, config)
                    # P is symmetric in (i, j); only the sight bit differs by direction
                    entries.setdefault((states[a].agent_id, states[b].agent_id), []).append(
                        (frame_pos, weight, offset + b * n + a)
                    )
                    entries.setdefault((states[b].agent_id, states[a].agent_id), []).append(
                        (frame_pos, weight, offset + a * n + b)
                    )

        self.pairs: list[tuple[str, str]] = sorted(entries)
        ptr = [0]
        frame_pos, weight, sight = [], [], []
        for pair in self.pairs:
            for fp, w, s in entries[pair]:
                frame_pos.append(fp)
                weight.append(w)
                sight.append(s)
            ptr.append(len(frame_pos))
        self.pair_ptr = np.asarray(ptr, dtype=np.int64)
        self.frame_pos = np.asarray(frame_pos, dtype=np.int64)
        self.weight = np.asarray(weight, dtype=float)
        self.sight_index = np.asarray(sight, dtype=np.int64)
        self.pair_of_entry = np.repeat(np.arange(len(self.pairs)), np.diff(self.pair_ptr))

        logger.debug(
            "weight table: %d ordered pairs, %d entries (%s)",
            len(self.pairs), len(self.weight), pair_filter.value,
        )

    @classmethod
    def build(
        cls, scenario: Scenario, config: RiskConfig, pair_filter: PairFilter = PairFilter.BOTH
    ) -> "PairWeightTable":
        return cls(scenario, config, pair_filter)

    def __len__(self) -> int:
        return len(self.pairs)

    def risk_values(self, sight: np.ndarray) -> np.ndarray:
        """Instantaneous risk f for every entry, given a flat FrameLayout sight vector."""
        if len(self.weight) == 0:
            return self.weight.copy()
        return np.where(sight[self.sight_index], 0.0, self.weight)

    def entries_of(self, pair_index: int) -> slice:
        return slice(int(self.pair_ptr[pair_index]), int(self.pair_ptr[pair_index + 1]))


__all__ = [
    "FrameLayout",
    "PairWeightTable",
    "instantaneous_weight",
    "select_k",
]
