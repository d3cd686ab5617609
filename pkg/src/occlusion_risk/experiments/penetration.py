"""
Penetration Sweep
=================

How the share of connected vehicles changes system-wide risk.

Every agent has a 360 deg FoV (unless the run config names another mode) and connected
vehicles fuse perception under the symmetric paradigm. For each penetration rate p and
each repetition r, connectivity is drawn with seed ``seed + r``; per-agent RTL is averaged
over the repetitions.

Files:
    rtl_p{p}.csv         mean RTL per agent
    ccdf_p{p}.csv        CCDF of the mean RTL
    assignment_p{p}.csv  connected vehicles of the first repetition
    stats.csv            dispersion per (scenario/pair type/p)
    penetration.csv      top-decile mean at p as a percentage of p = 0
"""

from __future__ import annotations

import logging

from occlusion_risk.analytics.emitters import (
    stats_row,
    write_assignment,
    write_ccdf,
    write_penetration_table,
    write_rtl,
    write_stats,
)
from occlusion_risk.analytics.statistics import build_ccdf, normalized_reduction, top_decile_mean
from occlusion_risk.comms.connectivity import assignment_rows
from occlusion_risk.experiments.context import ExperimentContext, ExperimentResult, mean_rtl, pair_types_for
from occlusion_risk.models.run_config import FovMode, Paradigm, PairFilter

logger = logging.getLogger(__name__)


def rate_label(p: float) -> str:
    return f"{p:.2f}"


def sweep_rates(rates: tuple[float, ...]) -> list[float]:
    """Requested rates plus p = 0, which every normalisation needs."""
    return sorted(set(rates) | {0.0})


def sweep_fov_mode(ctx: ExperimentContext, default: FovMode) -> FovMode:
    """The experiment's own FoV mode unless the run config sets one explicitly."""
    if "fov_mode" in ctx.run_config.model_fields_set:
        return ctx.run_config.fov_mode
    return default


def sweep_mean_rtl(
    ctx: ExperimentContext,
    p: float,
    fov_mode: FovMode,
    paradigms: list[Paradigm],
    pair_filters: list[PairFilter],
) -> dict[tuple[Paradigm, PairFilter], dict[str, float]]:
    """Mean RTL over the repetitions at one rate, per (paradigm, pair filter)."""
    tables = {pf: ctx.table(pair_filter=pf) for pf in pair_filters}

    def draw(seed: int):
        assignment = ctx.assignment(p, seed)
        sights = ctx.sights(fov_mode, assignment, paradigms)
        return {
            (paradigm, pf): ctx.report(table, sights[paradigm], penetration=p, paradigm=paradigm, seed=seed)
            for paradigm in paradigms
            for pf, table in tables.items()
        }

    reports = ctx.map_draws(draw, ctx.seeds())
    return {key: mean_rtl([r[key] for r in reports]) for key in reports[0]}


def run_penetration_sweep(ctx: ExperimentContext) -> ExperimentResult:
    """Symmetric fusion at every penetration rate, averaged over Monte Carlo draws."""
    fov_mode = sweep_fov_mode(ctx, FovMode.HOMOGENEOUS_360)
    paradigm = ctx.run_config.paradigm
    if paradigm is Paradigm.NONE:
        paradigm = Paradigm.SYMMETRIC
    pair_filters = pair_types_for(ctx.run_config.pair_filter)
    main_filter = ctx.run_config.pair_filter
    filters = sorted(set(pair_filters) | {main_filter}, key=lambda pf: pf.value)
    out = ctx.output_dir
    result = ExperimentResult()

    top: dict[tuple[PairFilter, float], float] = {}
    stats = []
    for p in sweep_rates(ctx.run_config.penetration_rates):
        logger.info("penetration sweep %s: p=%s, %d repetitions", ctx.name, rate_label(p), ctx.run_config.repetitions)
        means = sweep_mean_rtl(ctx, p, fov_mode, [paradigm], filters)
        rtl = means[(paradigm, main_filter)]
        result.files.append(write_rtl(rtl, ctx.risk, out / f"rtl_p{rate_label(p)}.csv"))
        if rtl:
            result.files.append(write_ccdf(build_ccdf(list(rtl.values())), out / f"ccdf_p{rate_label(p)}.csv"))
        first = ctx.assignment(p, ctx.run_config.seed)
        result.files.append(
            write_assignment(assignment_rows(first, ctx.scenario), out / f"assignment_p{rate_label(p)}.csv")
        )
        for pf in pair_filters:
            values = list(means[(paradigm, pf)].values())
            stats.append(stats_row(f"{ctx.name}/{pf.value}/p{rate_label(p)}", values))
            top[(pf, p)] = top_decile_mean(values) if values else 0.0

    rows = []
    for pf in pair_filters:
        for p in ctx.run_config.penetration_rates:
            rows.append(
                {
                    "scenario": ctx.name,
                    "pair_type": pf.value,
                    "p": p,
                    "normalized_pct": normalized_reduction(top[(pf, p)], top[(pf, 0.0)]).value,
                }
            )
    result.files.append(write_stats(stats, out / "stats.csv"))
    result.files.append(write_penetration_table(rows, out / "penetration.csv"))
    result.summary = {
        "paradigm": paradigm.value,
        "fov_mode": fov_mode.value,
        "top10_mean_ms": {f"{pf.value}/p{rate_label(p)}": value for (pf, p), value in sorted(top.items())},
    }
    return result


__all__ = ["run_penetration_sweep", "sweep_mean_rtl", "sweep_rates"]
