"""
Risk Heatmaps
=============

Spatial picture of where severe occlusion events happen.

For every pair whose F exceeds the high-risk threshold, the largest event's peak frame
is located and both agents' positions at that frame become heat sources, each carrying
half of F. Every grid cell whose center lies within ``radius`` of a source accumulates
the source's value; the grid is then normalised by its maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from occlusion_risk.models.scene import Point, Scenario
from occlusion_risk.risk.report import RiskReport


@dataclass(frozen=True)
class HeatSource:
    position: Point
    value_ms: float


@dataclass(frozen=True)
class GridSpec:
    origin: Point
    cell_size: float
    width: int
    height: int

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """(x, y) center coordinates, each shaped (height, width)."""
        xs = self.origin[0] + (np.arange(self.width) + 0.5) * self.cell_size
        ys = self.origin[1] + (np.arange(self.height) + 0.5) * self.cell_size
        return np.meshgrid(xs, ys)

    @classmethod
    def covering(cls, scenario: Scenario, cell_size: float, padding: float = 0.0) -> "GridSpec":
        """Smallest grid of ``cell_size`` cells covering the scenario bounds plus ``padding``."""
        min_x, min_y, max_x, max_y = scenario.bounds()
        min_x, min_y = min_x - padding, min_y - padding
        width = max(1, math.ceil((max_x + padding - min_x) / cell_size))
        height = max(1, math.ceil((max_y + padding - min_y) / cell_size))
        return cls(origin=(min_x, min_y), cell_size=cell_size, width=width, height=height)


@dataclass(frozen=True, eq=False)
class HeatmapGrid:
    spec: GridSpec
    raw: np.ndarray
    normalized: np.ndarray

    def rows(self) -> list[dict[str, float | int]]:
        """Rows ``row,col,raw_ms,normalized`` in row-major order."""
        return [
            {"row": r, "col": c, "raw_ms": float(self.raw[r, c]), "normalized": float(self.normalized[r, c])}
            for r in range(self.spec.height)
            for c in range(self.spec.width)
        ]


def high_risk_events(report: RiskReport, scenario: Scenario, threshold: float) -> list[HeatSource]:
    """Heat sources of every pair with F above ``threshold`` (two per pair)."""
    sources = []
    for (i, j), value in sorted(report.pair_F.items()):
        if value <= threshold:
            continue
        worst = max(report.events[(i, j)], key=lambda e: e.area_ms)
        for agent_id in (i, j):
            position = scenario.state(worst.peak_frame, agent_id).position
            sources.append(HeatSource(position=position, value_ms=value / 2.0))
    return sources


def accumulate_heatmap(sources: list[HeatSource], radius: float, spec: GridSpec) -> HeatmapGrid:
    """
    Example:
        two coincident sources 100 and 50 -> that cell raw 150, normalized 1.0
    """
    cx, cy = spec.cell_centers()
    raw = np.zeros((spec.height, spec.width), dtype=float)
    for source in sources:
        inside = np.hypot(cx - source.position[0], cy - source.position[1]) <= radius
        raw[inside] += source.value_ms
    peak = raw.max() if raw.size else 0.0
    normalized = raw / peak if peak > 0.0 else np.zeros_like(raw)
    return HeatmapGrid(spec=spec, raw=raw, normalized=normalized)


__all__ = [
    "GridSpec",
    "HeatSource",
    "HeatmapGrid",
    "accumulate_heatmap",
    "high_risk_events",
]
