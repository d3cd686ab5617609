"""Pydantic data models: scene, run configuration, plans, workflow state and API."""

from occlusion_risk.models.plan import SweepPlan
from occlusion_risk.models.run_config import (
    ExperimentKind,
    FovMode,
    Paradigm,
    PairFilter,
    RiskConfig,
    RiskLevel,
    RunConfig,
)
from occlusion_risk.models.scene import AgentClass, AgentState, OccluderPolygon, Scenario, build_scenario

__all__ = [
    "AgentClass",
    "AgentState",
    "ExperimentKind",
    "FovMode",
    "OccluderPolygon",
    "Paradigm",
    "PairFilter",
    "RiskConfig",
    "RiskLevel",
    "RunConfig",
    "Scenario",
    "SweepPlan",
    "build_scenario",
]
