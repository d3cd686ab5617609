"""
LangGraph Workflow Definition
=============================

The experiment pipeline as a DAG:

    START
      │
      ▼
    load_inputs            parse trajectory / map / config, resolve the RunConfig
      │
      ▼
    ┌────────────────┐
    │route_experiment│
    └───────┬────────┘
      ┌─────┼──────────────┬────────────────┐
      ▼     ▼              ▼                ▼
  baseline  penetration  paradigm_compare  sensitivity
      │     _sweep         │                │
      └─────┴──────┬───────┴────────────────┘
                   ▼
              write_outputs       run manifest
                   │
                   ▼
                  END

Every node takes the state and returns only the fields it fills. Errors raised by a
node (bad input files, an invariant violation) propagate out of ``invoke`` unchanged.
"""

import logging
from pathlib import Path

from langgraph.graph import END, START, StateGraph

from occlusion_risk import __version__
from occlusion_risk.analytics.emitters import write_manifest
from occlusion_risk.experiments import (
    ExperimentContext,
    run_baseline,
    run_paradigm_compare,
    run_penetration_sweep,
    run_sensitivity,
)
from occlusion_risk.graph.router import route_experiment
from occlusion_risk.ingest import parse_map, parse_trajectory, resolve_run_config
from occlusion_risk.models.plan import SweepPlan
from occlusion_risk.models.run_config import ExperimentKind
from occlusion_risk.models.state import ExperimentState
from occlusion_risk.utils.config import get_settings

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


# ═══════════════════════════════════════════════════════════════════════════
# Nodes
# ═══════════════════════════════════════════════════════════════════════════

def load_inputs(state: ExperimentState) -> dict:
    plan = state["plan"]
    settings = get_settings()
    run_config = resolve_run_config(
        plan,
        state.get("overrides"),
        default_output_dir=settings.output_dir,
        default_repetitions=settings.default_repetitions,
    )
    scenario = parse_trajectory(plan.scenario_path, motion_threshold=run_config.risk.motion_threshold)
    if plan.map_path:
        scenario = scenario.with_occluders(parse_map(plan.map_path))
    context = ExperimentContext(
        scenario,
        run_config,
        name=Path(plan.scenario_path).stem,
        workers=state.get("workers") or settings.workers,
    )
    return {"context": context}


def _experiment_node(runner):
    def node(state: ExperimentState) -> dict:
        result = runner(state["context"])
        return {"files": [str(path) for path in result.files], "summary": result.summary}

    node.__name__ = runner.__name__
    return node


def write_outputs(state: ExperimentState) -> dict:
    """Write manifest.json: resolved configuration, its hash and the files of the run."""
    context: ExperimentContext = state["context"]
    out = context.output_dir
    files = sorted({Path(f).relative_to(out).as_posix() for f in state.get("files", [])})
    manifest = {
        "version": __version__,
        "experiment": ExperimentKind(state["plan"].experiment).value,
        "scenario": context.name,
        "run_config": context.run_config.model_dump(mode="json", exclude={"risk"}),
        "risk_config": context.risk.model_dump(mode="json"),
        "config_hash": context.risk.fingerprint(),
        "files": files,
        "summary": state.get("summary", {}),
    }
    path = write_manifest(manifest, out / MANIFEST_NAME)
    return {"manifest_path": str(path)}


# ═══════════════════════════════════════════════════════════════════════════
# Graph
# ═══════════════════════════════════════════════════════════════════════════

EXPERIMENT_NODES = {
    ExperimentKind.BASELINE.value: run_baseline,
    ExperimentKind.PENETRATION_SWEEP.value: run_penetration_sweep,
    ExperimentKind.PARADIGM_COMPARE.value: run_paradigm_compare,
    ExperimentKind.SENSITIVITY.value: run_sensitivity,
}


def create_workflow():
    """
    Build and compile the experiment workflow.

    Example:
        >>> workflow = create_workflow()
        >>> final = workflow.invoke({"plan": plan, "overrides": {}, "files": []})
        >>> final["manifest_path"]
    """
    builder = StateGraph(ExperimentState)

    builder.add_node("load_inputs", load_inputs)
    for name, runner in EXPERIMENT_NODES.items():
        builder.add_node(name, _experiment_node(runner))
    builder.add_node("write_outputs", write_outputs)

    builder.add_edge(START, "load_inputs")
    builder.add_conditional_edges(
        "load_inputs",
        route_experiment,
        {name: name for name in EXPERIMENT_NODES},
    )
    for name in EXPERIMENT_NODES:
        builder.add_edge(name, "write_outputs")
    builder.add_edge("write_outputs", END)

    return builder.compile()


def run_plan(
    plan: SweepPlan,
    overrides: dict | None = None,
    *,
    workers: int | None = None,
    workflow=None,
) -> ExperimentState:
    """
    Execute one plan end to end and return the final state.

    ``overrides`` holds RunConfig fields (e.g. from CLI flags) that win over the plan.
    """
    workflow = workflow or create_workflow()
    initial_state: ExperimentState = {
        "plan": plan,
        "overrides": overrides or {},
        "workers": workers or 0,
        "files": [],
        "summary": {},
        "manifest_path": None,
    }
    logger.info("running %s on %s", plan.experiment, plan.scenario_path)
    return workflow.invoke(initial_state)


__all__ = ["create_workflow", "load_inputs", "run_plan", "write_outputs"]
