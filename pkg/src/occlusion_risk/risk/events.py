"""
Occlusion Events
================

Turns per-frame risk into the RTL metric:

    f_{i,j}(t)   instantaneous risk; 0 when observer j perceives target i, or when either
                 agent is absent at t, else the risk weight P
    event        maximal run of frames with f > 0
    area         sum(f) * tick_seconds, reported in milliseconds
    F_{i,j}      largest event area of the pair
    RTL_i        max over j of F_{i,j}

Two code paths compute the same thing. ``risk_series``/``event_integrals`` work on one
pair and are what the tests compare against. ``table_events`` works on a whole
``PairWeightTable`` at once with numpy and is what the experiment runners use.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from occlusion_risk.models.run_config import RiskConfig, RiskLevel
from occlusion_risk.models.scene import Scenario, Vector
from occlusion_risk.perception.visibility import VisibilityRelation
from occlusion_risk.risk.kinematics import estimate_accelerations, pair_kinematics
from occlusion_risk.risk.reachable import reachable_region
from occlusion_risk.risk.weights import PairWeightTable, instantaneous_weight, select_k

MS_PER_SECOND = 1000.0


@dataclass(frozen=True, eq=False)
class RiskSeries:
    """f_{i,j} over every frame of a scenario (0 where either agent is absent)."""

    pair: tuple[str, str]
    frames: tuple[int, ...]
    values: np.ndarray
    tick_seconds: float


@dataclass(frozen=True)
class EventIntegral:
    start_frame: int
    end_frame: int
    area_ms: float
    peak_frame: int
    peak_value: float


def risk_series(
    i: str,
    j: str,
    scenario: Scenario,
    effective_visibility: Mapping[int, VisibilityRelation],
    config: RiskConfig,
    accelerations: Mapping[tuple[int, str], Vector] | None = None,
) -> RiskSeries:
    """
    Risk that observer ``j`` fails to perceive target ``i``, frame by frame.

    ``effective_visibility`` maps frame -> relation; a frame missing from the mapping is
    treated as "nobody sees anybody".
    """
    if accelerations is None:
        accelerations = estimate_accelerations(scenario)
    values = np.zeros(len(scenario.frames), dtype=float)
    for pos, frame in enumerate(scenario.frames):
        if not (scenario.has(frame, i) and scenario.has(frame, j)):
            continue
        relation = effective_visibility.get(frame)
        if relation is not None and (j, i) in relation:
            continue
        state_i = scenario.state(frame, i)
        state_j = scenario.state(frame, j)
        kin = pair_kinematics(
            state_i,
            state_j,
            config,
            region_i=reachable_region(state_i, config, accelerations[(frame, i)]),
            region_j=reachable_region(state_j, config, accelerations[(frame, j)]),
        )
        k = select_k(kin, state_i.speed, state_j.speed, config)
        values[pos] = instantaneous_weight(kin, k, config)
    return RiskSeries(pair=(i, j), frames=scenario.frames, values=values, tick_seconds=scenario.tick_seconds)


def event_integrals(series: RiskSeries) -> list[EventIntegral]:
    """
    Maximal positive runs of a series and their areas.

    Example:
        f = [0, .5, .5, 0, .2, .2, .2, 0] at 10 Hz -> areas [100 ms, 60 ms]
    """
    positive = np.concatenate([[False], series.values > 0.0, [False]])
    edges = np.flatnonzero(np.diff(positive.astype(np.int8)))
    events = []
    for start, stop in zip(edges[0::2], edges[1::2]):
        run = series.values[start:stop]
        peak = int(np.argmax(run))
        events.append(
            EventIntegral(
                start_frame=series.frames[start],
                end_frame=series.frames[stop - 1],
                area_ms=float(run.sum()) * series.tick_seconds * MS_PER_SECOND,
                peak_frame=series.frames[start + peak],
                peak_value=float(run[peak]),
            )
        )
    return events


def pair_F(series_or_events: RiskSeries | Iterable[EventIntegral]) -> float:
    """Largest event area of a pair in ms; 0 when it has no event."""
    events = (
        event_integrals(series_or_events)
        if isinstance(series_or_events, RiskSeries)
        else series_or_events
    )
    return max((e.area_ms for e in events), default=0.0)


def agent_rtl(i: str, all_series: Iterable[RiskSeries]) -> float:
    """RTL of target ``i``: the largest F over every series whose target is ``i``."""
    return max((pair_F(s) for s in all_series if s.pair[0] == i), default=0.0)


def risk_level(rtl_ms: float, config: RiskConfig) -> RiskLevel:
    """Below the medium threshold is low, above the high threshold is high, both bounds medium."""
    if rtl_ms < config.medium_risk_threshold:
        return RiskLevel.LOW
    if rtl_ms > config.high_risk_threshold:
        return RiskLevel.HIGH
    return RiskLevel.MEDIUM


# ═══════════════════════════════════════════════════════════════════════════
# Vectorized path over a PairWeightTable
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class TableEvents:
    """
    Every event of every pair of a table, as parallel arrays.

    ``pair_index`` indexes ``table.pairs``; ``start``/``end``/``peak`` index table entries
    (use ``table.frame_pos`` to get back to frames).
    """

    pair_index: np.ndarray
    start: np.ndarray
    end: np.ndarray
    peak: np.ndarray
    area_ms: np.ndarray
    pair_F: np.ndarray


def table_events(table: PairWeightTable, f: np.ndarray) -> TableEvents:
    """
    Segment and integrate events for all pairs of ``table`` given per-entry risk ``f``.

    A run breaks where f drops to 0, at a pair boundary, or at a gap in frames (one of
    the two agents was absent in between).
    """
    n_pairs = len(table.pairs)
    empty = np.zeros(0, dtype=np.int64)
    if len(f) == 0:
        return TableEvents(empty, empty, empty, empty, np.zeros(0), np.zeros(n_pairs))

    positive = f > 0.0
    starts_pair = np.zeros(len(f), dtype=bool)
    starts_pair[table.pair_ptr[:-1][np.diff(table.pair_ptr) > 0]] = True
    contiguous = np.zeros(len(f), dtype=bool)
    contiguous[1:] = (np.diff(table.frame_pos) == 1) & ~starts_pair[1:]
    continues = np.zeros(len(f), dtype=bool)
    continues[1:] = positive[:-1]
    run_start = positive & ~(continues & contiguous)

    run_id = np.cumsum(run_start) - 1
    members = np.flatnonzero(positive)
    n_runs = int(run_start.sum())
    if n_runs == 0:
        return TableEvents(empty, empty, empty, empty, np.zeros(0), np.zeros(n_pairs))

    ids = run_id[members]
    area = np.bincount(ids, weights=f[members], minlength=n_runs) * table.scenario.tick_seconds * MS_PER_SECOND
    start = np.flatnonzero(run_start)
    end = np.zeros(n_runs, dtype=np.int64)
    np.maximum.at(end, ids, members)
    # first entry of each run after ordering by (run, -f) is the earliest peak
    order = np.lexsort((members, -f[members], ids))
    first = np.ones(len(order), dtype=bool)
    first[1:] = ids[order][1:] != ids[order][:-1]
    peak = members[order[first]]

    pair_index = table.pair_of_entry[start]
    pair_F = np.zeros(n_pairs)
    np.maximum.at(pair_F, pair_index, area)
    return TableEvents(pair_index, start, end, peak, area, pair_F)


__all__ = [
    "EventIntegral",
    "MS_PER_SECOND",
    "RiskSeries",
    "TableEvents",
    "agent_rtl",
    "event_integrals",
    "pair_F",
    "risk_level",
    "risk_series",
    "table_events",
]
