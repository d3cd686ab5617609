"""LangGraph experiment workflow."""

from occlusion_risk.graph.router import route_experiment
from occlusion_risk.graph.workflow import create_workflow, run_plan

__all__ = ["create_workflow", "route_experiment", "run_plan"]
