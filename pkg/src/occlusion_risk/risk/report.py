"""
Risk Reports
============

``evaluate_risk`` runs one visibility realisation through a ``PairWeightTable`` and
collects the result in a ``RiskReport``: per-agent RTL, per-pair F, per-pair events and
the metadata of the run that produced it.

Which agents appear in a report depends on the pair filter:

    veh_veh         vehicles
    veh_vru / both  every agent

An eligible agent without any positive-risk frame has RTL 0.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, Field

from occlusion_risk.models.run_config import Paradigm, PairFilter, RiskConfig, RiskLevel
from occlusion_risk.models.scene import Scenario
from occlusion_risk.perception.visibility import VisibilityRelation
from occlusion_risk.risk.events import EventIntegral, risk_level, table_events
from occlusion_risk.risk.weights import FrameLayout, PairWeightTable


class RunMetadata(BaseModel):
    """Where a report came from."""

    penetration: float | None = Field(default=None, description="V2X penetration rate, None for raw runs")
    paradigm: Paradigm = Paradigm.NONE
    seed: int | None = None
    config_hash: str = ""
    pair_filter: PairFilter = PairFilter.BOTH


@dataclass(eq=False)
class RiskReport:
    rtl: dict[str, float]
    pair_F: dict[tuple[str, str], float]
    events: dict[tuple[str, str], list[EventIntegral]]
    metadata: RunMetadata = field(default_factory=RunMetadata)

    @property
    def agent_ids(self) -> list[str]:
        return sorted(self.rtl)

    def rtl_values(self) -> np.ndarray:
        """RTL of every agent in ``agent_ids`` order."""
        return np.array([self.rtl[a] for a in self.agent_ids], dtype=float)

    def level(self, agent_id: str, config: RiskConfig) -> RiskLevel:
        return risk_level(self.rtl[agent_id], config)


def eligible_agents(scenario: Scenario, pair_filter: PairFilter) -> list[str]:
    if pair_filter is PairFilter.VEH_VEH:
        return scenario.vehicle_ids
    return scenario.agent_ids


def flatten_relations(layout: FrameLayout, relations: Mapping[int, VisibilityRelation]) -> np.ndarray:
    """Encode per-frame relations as a flat sight vector (missing frames: nobody sees)."""
    flat = np.zeros(layout.size, dtype=bool)
    for frame, relation in relations.items():
        ids = layout.ids.get(frame)
        if not ids:
            continue
        index = {agent_id: k for k, agent_id in enumerate(ids)}
        n, offset = len(ids), layout.offsets[frame]
        for observer, target in relation.sees:
            flat[offset + index[observer] * n + index[target]] = True
    return flat


def evaluate_risk(
    table: PairWeightTable,
    visibility: Mapping[int, VisibilityRelation] | np.ndarray,
    metadata: RunMetadata | None = None,
) -> RiskReport:
    """
    Risk report for one effective-visibility realisation.

    ``visibility`` is either frame -> relation or a flat sight vector laid out by
    ``table.layout``.
    """
    sight = (
        visibility
        if isinstance(visibility, np.ndarray)
        else flatten_relations(table.layout, visibility)
    )
    f = table.risk_values(sight)
    found = table_events(table, f)

    rtl = {agent_id: 0.0 for agent_id in eligible_agents(table.scenario, table.pair_filter)}
    pair_F: dict[tuple[str, str], float] = {}
    for k, (i, j) in enumerate(table.pairs):
        value = float(found.pair_F[k])
        pair_F[(i, j)] = value
        if value > rtl.get(i, 0.0):
            rtl[i] = value

    frames = table.scenario.frames
    events: dict[tuple[str, str], list[EventIntegral]] = {}
    for k, start, end, peak, area in zip(
        found.pair_index, found.start, found.end, found.peak, found.area_ms
    ):
        events.setdefault(table.pairs[k], []).append(
            EventIntegral(
                start_frame=frames[table.frame_pos[start]],
                end_frame=frames[table.frame_pos[end]],
                area_ms=float(area),
                peak_frame=frames[table.frame_pos[peak]],
                peak_value=float(f[peak]),
            )
        )

    if metadata is None:
        metadata = RunMetadata(config_hash=table.config.fingerprint(), pair_filter=table.pair_filter)
    return RiskReport(rtl=rtl, pair_F=pair_F, events=events, metadata=metadata)


def risk_level_counts(report: RiskReport, config: RiskConfig) -> dict[RiskLevel, int]:
    counts = {level: 0 for level in RiskLevel}
    for value in report.rtl.values():
        counts[risk_level(value, config)] += 1
    return counts


__all__ = [
    "RiskReport",
    "RunMetadata",
    "eligible_agents",
    "evaluate_risk",
    "flatten_relations",
    "risk_level_counts",
]
