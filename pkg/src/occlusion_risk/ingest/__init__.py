"""Trajectory, map, run-config, plan and comparison-metric parsers."""

from occlusion_risk.ingest.config_file import build_run_config, load_plan, parse_config, resolve_run_config
from occlusion_risk.ingest.map_file import parse_map, write_map
from occlusion_risk.ingest.metric_file import parse_metric_samples
from occlusion_risk.ingest.trajectory import parse_trajectory, write_trajectory

__all__ = [
    "build_run_config",
    "load_plan",
    "parse_config",
    "parse_map",
    "parse_metric_samples",
    "parse_trajectory",
    "resolve_run_config",
    "write_map",
    "write_trajectory",
]
