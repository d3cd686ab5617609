"""
Routing Logic (Conditional Edges)
=================================

After the inputs are loaded, the workflow branches on the plan's experiment kind:

    load_inputs → route_experiment() → "baseline" | "penetration_sweep"
                                       | "paradigm_compare" | "sensitivity"

Each branch name is also the name of the node that runs it.
"""

from occlusion_risk.models.run_config import ExperimentKind
from occlusion_risk.models.state import ExperimentState


def route_experiment(state: ExperimentState) -> str:
    """Name of the experiment node for the plan in ``state``."""
    return ExperimentKind(state["plan"].experiment).value


__all__ = ["route_experiment"]
