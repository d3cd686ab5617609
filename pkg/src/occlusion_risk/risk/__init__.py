"""Risk engine: reachable sets, risk weights, occlusion events and RTL reports."""

from occlusion_risk.risk.events import (
    EventIntegral,
    RiskSeries,
    agent_rtl,
    event_integrals,
    pair_F,
    risk_level,
    risk_series,
    table_events,
)
from occlusion_risk.risk.kinematics import PairKinematics, estimate_accelerations, pair_kinematics
from occlusion_risk.risk.reachable import (
    ReachableDisc,
    ReachablePolygon,
    overlap_indicator,
    reachable_region,
)
from occlusion_risk.risk.report import RiskReport, RunMetadata, evaluate_risk, risk_level_counts
from occlusion_risk.risk.weights import PairWeightTable, instantaneous_weight, select_k

__all__ = [
    "EventIntegral",
    "PairKinematics",
    "PairWeightTable",
    "ReachableDisc",
    "ReachablePolygon",
    "RiskReport",
    "RiskSeries",
    "RunMetadata",
    "agent_rtl",
    "estimate_accelerations",
    "evaluate_risk",
    "event_integrals",
    "instantaneous_weight",
    "overlap_indicator",
    "pair_F",
    "pair_kinematics",
    "reachable_region",
    "risk_level",
    "risk_level_counts",
    "risk_series",
    "select_k",
    "table_events",
]
