"""
Baseline Experiment
===================

Raw perception only (no V2X): every agent uses the FoV mode of the run config (120 deg
forward by default) and RTL is computed straight from what each observer sees itself.

Files:
    rtl.csv, pairs.csv, ccdf.csv, stats.csv, summary.csv, levels.csv, heatmap.csv,
    visibility.csv, and dispersion.csv when a comparison metric file is configured
"""

from __future__ import annotations

import logging

from occlusion_risk.analytics.emitters import (
    stats_row,
    write_ccdf,
    write_dispersion,
    write_heatmap,
    write_pair_table,
    write_rows,
    write_rtl,
    write_stats,
    write_summary,
    write_visibility,
)
from occlusion_risk.analytics.heatmap import GridSpec, accumulate_heatmap, high_risk_events
from occlusion_risk.analytics.statistics import (
    build_ccdf,
    dispersion_comparison,
    distribution_summary,
    traffic_exposure,
)
from occlusion_risk.experiments.context import NO_CONNECTIVITY, ExperimentContext, ExperimentResult, pair_types_for
from occlusion_risk.ingest.metric_file import parse_metric_samples
from occlusion_risk.models.run_config import FovMode, Paradigm
from occlusion_risk.perception.visibility import fov_assignment
from occlusion_risk.risk.report import risk_level_counts

logger = logging.getLogger(__name__)


def run_baseline(ctx: ExperimentContext, fov_mode: FovMode | None = None) -> ExperimentResult:
    """Raw-visibility RTL for every agent plus its statistics, heatmap and visibility dump."""
    fov_mode = fov_mode or ctx.run_config.fov_mode
    out = ctx.output_dir
    result = ExperimentResult()
    logger.info("baseline on %s (fov=%s, pairs=%s)", ctx.name, fov_mode.value, ctx.run_config.pair_filter.value)

    sight = ctx.sights(fov_mode, NO_CONNECTIVITY, [Paradigm.NONE])[Paradigm.NONE]
    report = ctx.report(ctx.table(), sight)

    result.files.append(write_rtl(report.rtl, ctx.risk, out / "rtl.csv"))
    result.files.append(write_pair_table(report, out / "pairs.csv"))
    if report.rtl:
        result.files.append(write_ccdf(build_ccdf(report.rtl_values()), out / "ccdf.csv"))

    groups = {
        f"{ctx.name}/{pf.value}": ctx.report(ctx.table(pair_filter=pf), sight).rtl_values()
        for pf in pair_types_for(ctx.run_config.pair_filter)
    }
    result.files.append(write_stats([stats_row(g, values) for g, values in groups.items()], out / "stats.csv"))
    summaries = {g: distribution_summary(values) for g, values in groups.items() if len(values)}
    result.files.append(write_summary(summaries, out / "summary.csv"))

    if ctx.run_config.comparison_metric_path:
        other = parse_metric_samples(ctx.run_config.comparison_metric_path)
        rows = dispersion_comparison(
            {g: values for g, values in groups.items() if len(values)},
            other,
            other_name=ctx.run_config.comparison_metric_name,
        )
        result.files.append(write_dispersion(rows, out / "dispersion.csv"))

    levels = risk_level_counts(report, ctx.risk)
    result.files.append(
        write_rows(
            [{"risk_level": level.value, "count": count} for level, count in levels.items()],
            ["risk_level", "count"],
            out / "levels.csv",
        )
    )

    sources = high_risk_events(report, ctx.scenario, ctx.risk.high_risk_threshold)
    radius = ctx.run_config.heatmap_radius
    spec = GridSpec.covering(ctx.scenario, ctx.run_config.heatmap_cell_size, padding=radius)
    result.files.append(write_heatmap(accumulate_heatmap(sources, radius, spec), out / "heatmap.csv"))

    fovs = fov_assignment(ctx.scenario, fov_mode, ctx.risk)
    model = ctx.visibility()
    relations = {frame: model.relation(frame, fovs) for frame in ctx.scenario.frames}
    result.files.append(write_visibility(relations, out / "visibility.csv"))

    exposure = traffic_exposure(ctx.scenario)
    result.summary = {
        "agents": len(report.rtl),
        "max_rtl_ms": max(report.rtl.values(), default=0.0),
        "risk_levels": {level.value: count for level, count in levels.items()},
        "heat_sources": len(sources),
        "vehicles_per_minute": exposure.vehicles_per_minute,
        "vru_ratio": exposure.vru_ratio,
    }
    return result


__all__ = ["run_baseline"]
