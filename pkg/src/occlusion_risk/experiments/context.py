"""
Experiment Context
==================

Everything the experiment runners share for one scenario, computed once and reused by
every Monte Carlo draw:

    VisibilityModel    FoV-independent range + line-of-sight matrices, per frame
    raw sight cache    per-FoV-mode sight matrices that do not depend on connectivity
    weight tables      PairWeightTable per (RiskConfig, pair filter)

HOW A DRAW WORKS:
-----------------
1. ``sample_connected`` fixes the connected vehicles for (p, seed)
2. ``sights`` builds the raw sight matrix of every frame for the FoV mode and fuses it
   once per requested paradigm, all from the same raw matrices
3. each weight table turns a flat sight vector into per-agent RTL (``evaluate_risk``)
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import TypeVar

import numpy as np

from occlusion_risk.comms.connectivity import ConnectivityAssignment, sample_connected
from occlusion_risk.comms.fusion import fuse_matrix
from occlusion_risk.models.run_config import FULL_CIRCLE, FovMode, Paradigm, PairFilter, RiskConfig, RunConfig
from occlusion_risk.models.scene import Scenario
from occlusion_risk.perception.visibility import VisibilityModel
from occlusion_risk.risk.report import RiskReport, RunMetadata, evaluate_risk
from occlusion_risk.risk.weights import FrameLayout, PairWeightTable

logger = logging.getLogger(__name__)

T = TypeVar("T")

NO_CONNECTIVITY = ConnectivityAssignment()


def pair_types_for(pair_filter: PairFilter) -> list[PairFilter]:
    """The single-type filters whose groups an experiment reports."""
    if pair_filter is PairFilter.BOTH:
        return [PairFilter.VEH_VEH, PairFilter.VEH_VRU]
    return [pair_filter]


@dataclass
class ExperimentResult:
    """Files written by one experiment and a small JSON-friendly summary."""

    files: list[Path] = field(default_factory=list)
    summary: dict[str, object] = field(default_factory=dict)


class ExperimentContext:
    """Loaded scenario + resolved run config + the caches every experiment reuses."""

    def __init__(
        self,
        scenario: Scenario,
        run_config: RunConfig,
        *,
        name: str = "scenario",
        workers: int = 1,
    ) -> None:
        self.scenario = scenario
        self.run_config = run_config
        self.name = name
        self.workers = max(1, workers)
        self.layout = FrameLayout.of(scenario)
        self._visibility: dict[tuple[float, float, float], VisibilityModel] = {}
        self._tables: dict[tuple[str, PairFilter], PairWeightTable] = {}
        self._raw: dict[tuple[FovMode, float, float, float], list[np.ndarray]] = {}
        self._vehicle_masks = [
            np.array([s.is_vehicle for s in scenario.agents_at(frame)], dtype=bool)
            for frame in scenario.frames
        ]

    @property
    def risk(self) -> RiskConfig:
        return self.run_config.risk

    @property
    def output_dir(self) -> Path:
        return Path(self.run_config.output_dir)

    # ═══════════════════════════════════════════════════════════════════
    # Caches
    # ═══════════════════════════════════════════════════════════════════

    def visibility(self, config: RiskConfig | None = None) -> VisibilityModel:
        """Visibility depends only on the perception range and the occluders, so sensitivity
        configurations that keep the range share one model."""
        config = config or self.risk
        key = (config.perception_range, config.fov_connected, config.fov_nonconnected)
        model = self._visibility.get(key)
        if model is None:
            model = VisibilityModel(self.scenario, config)
            self._visibility[key] = model
        return model

    def table(self, config: RiskConfig | None = None, pair_filter: PairFilter | None = None) -> PairWeightTable:
        config = config or self.risk
        pair_filter = pair_filter or self.run_config.pair_filter
        key = (config.fingerprint(), pair_filter)
        table = self._tables.get(key)
        if table is None:
            table = PairWeightTable(self.scenario, config, pair_filter)
            self._tables[key] = table
        return table

    # ═══════════════════════════════════════════════════════════════════
    # Sight vectors
    # ═══════════════════════════════════════════════════════════════════

    def _fovs(self, frame_pos: int, mode: FovMode, connected: frozenset[str], config: RiskConfig) -> np.ndarray:
        ids = self.layout.ids[self.scenario.frames[frame_pos]]
        if mode is FovMode.HOMOGENEOUS_360:
            return np.full(len(ids), FULL_CIRCLE)
        if mode is FovMode.ALL_120:
            return np.full(len(ids), config.fov_nonconnected)
        return np.array(
            [config.fov_connected if a in connected else config.fov_nonconnected for a in ids]
        )

    def raw_matrices(
        self,
        mode: FovMode,
        assignment: ConnectivityAssignment = NO_CONNECTIVITY,
        config: RiskConfig | None = None,
    ) -> list[np.ndarray]:
        """Raw per-frame sight matrices; cached unless the FoV depends on connectivity."""
        config = config or self.risk
        cacheable = mode is not FovMode.HETEROGENEOUS_120_360
        key = (mode, config.perception_range, config.fov_connected, config.fov_nonconnected)
        if cacheable and key in self._raw:
            return self._raw[key]
        model = self.visibility(config)
        matrices = [
            model.geometry(frame).sees_matrix(self._fovs(pos, mode, assignment.connected, config))
            for pos, frame in enumerate(self.scenario.frames)
        ]
        if cacheable:
            self._raw[key] = matrices
        return matrices

    def sights(
        self,
        mode: FovMode,
        assignment: ConnectivityAssignment,
        paradigms: Sequence[Paradigm],
        config: RiskConfig | None = None,
    ) -> dict[Paradigm, np.ndarray]:
        """Flat sight vector per paradigm, all fused from the same raw matrices."""
        config = config or self.risk
        model = self.visibility(config)
        raw = self.raw_matrices(mode, assignment, config)
        flats = {paradigm: np.zeros(self.layout.size, dtype=bool) for paradigm in paradigms}
        for pos, frame in enumerate(self.scenario.frames):
            ids = self.layout.ids[frame]
            n = len(ids)
            if n == 0:
                continue
            start = self.layout.offsets[frame]
            connected = np.array([a in assignment.connected for a in ids], dtype=bool)
            distance = model.geometry(frame).distance
            for paradigm in paradigms:
                fused = fuse_matrix(
                    raw[pos], paradigm, connected, self._vehicle_masks[pos], distance, config.comm_range
                )
                flats[paradigm][start:start + n * n] = fused.reshape(-1)
        return flats

    # ═══════════════════════════════════════════════════════════════════
    # Monte Carlo
    # ═══════════════════════════════════════════════════════════════════

    def seeds(self, repetitions: int | None = None) -> list[int]:
        """Repetition r uses seed ``seed + r``."""
        repetitions = repetitions or self.run_config.repetitions
        return [self.run_config.seed + r for r in range(repetitions)]

    def map_draws(self, draw: Callable[[int], T], seeds: Iterable[int]) -> list[T]:
        """Run ``draw`` for every seed; results come back in seed order whatever the worker count."""
        seeds = list(seeds)
        if self.workers == 1 or len(seeds) < 2:
            return [draw(seed) for seed in seeds]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(draw, seeds))

    def assignment(self, penetration: float, seed: int) -> ConnectivityAssignment:
        return sample_connected(self.scenario, penetration, seed)

    def report(
        self,
        table: PairWeightTable,
        sight: np.ndarray,
        *,
        penetration: float | None = None,
        paradigm: Paradigm = Paradigm.NONE,
        seed: int | None = None,
    ) -> RiskReport:
        metadata = RunMetadata(
            penetration=penetration,
            paradigm=paradigm,
            seed=seed,
            config_hash=table.config.fingerprint(),
            pair_filter=table.pair_filter,
        )
        return evaluate_risk(table, sight, metadata)


def mean_rtl(reports: Sequence[RiskReport]) -> dict[str, float]:
    """Per-agent mean RTL over repetitions (exactly rounded, so order does not matter)."""
    if not reports:
        return {}
    agents = reports[0].agent_ids
    return {a: math.fsum(r.rtl[a] for r in reports) / len(reports) for a in agents}


__all__ = [
    "ExperimentContext",
    "ExperimentResult",
    "NO_CONNECTIVITY",
    "mean_rtl",
    "pair_types_for",
]
