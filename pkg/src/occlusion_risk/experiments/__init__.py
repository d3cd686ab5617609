"""Experiment runners: baseline, penetration sweep, paradigm comparison, sensitivity."""

from occlusion_risk.experiments.baseline import run_baseline
from occlusion_risk.experiments.context import ExperimentContext, ExperimentResult
from occlusion_risk.experiments.paradigm import run_paradigm_compare
from occlusion_risk.experiments.penetration import run_penetration_sweep
from occlusion_risk.experiments.sensitivity import run_sensitivity, sensitivity_configs

__all__ = [
    "ExperimentContext",
    "ExperimentResult",
    "run_baseline",
    "run_paradigm_compare",
    "run_penetration_sweep",
    "run_sensitivity",
    "sensitivity_configs",
]
