"""
Paradigm Comparison
===================

Symmetric vs asymmetric V2X under heterogeneous sensing (360 deg for connected vehicles,
120 deg for everyone else). Both paradigms see the same connectivity draw at every
(p, seed), and every draw is checked against the dominance order

    RTL_asym(i) <= RTL_sym(i) <= RTL_raw(i)    for every agent i

where raw uses the same FoV assignment without any fusion.

Files:
    ccdf_{paradigm}_p{p}.csv   CCDF of mean RTL
    paradigm.csv               scenario,pair_type,paradigm,p,top10_mean_ms,normalized_pct
    stats.csv
"""

from __future__ import annotations

import logging

from occlusion_risk.analytics.emitters import stats_row, write_ccdf, write_rows, write_stats
from occlusion_risk.analytics.statistics import build_ccdf, normalized_reduction, top_decile_mean
from occlusion_risk.errors import InvariantViolation
from occlusion_risk.experiments.context import ExperimentContext, ExperimentResult, mean_rtl, pair_types_for
from occlusion_risk.experiments.penetration import rate_label, sweep_fov_mode, sweep_rates
from occlusion_risk.models.run_config import FovMode, Paradigm, PairFilter
from occlusion_risk.risk.report import RiskReport

logger = logging.getLogger(__name__)

PARADIGMS = [Paradigm.NONE, Paradigm.SYMMETRIC, Paradigm.ASYMMETRIC]
PARADIGM_COLUMNS = ["scenario", "pair_type", "paradigm", "p", "top10_mean_ms", "normalized_pct"]


def check_dominance(raw: RiskReport, symmetric: RiskReport, asymmetric: RiskReport) -> None:
    """Raise InvariantViolation if fusion ever increased an agent's RTL."""
    for agent_id, value in raw.rtl.items():
        sym, asym = symmetric.rtl[agent_id], asymmetric.rtl[agent_id]
        if not asym <= sym <= value:
            raise InvariantViolation(
                f"RTL order violated for {agent_id} (p={symmetric.metadata.penetration}, "
                f"seed={symmetric.metadata.seed}): raw {value}, symmetric {sym}, asymmetric {asym}"
            )


def paradigm_mean_rtl(
    ctx: ExperimentContext,
    p: float,
    fov_mode: FovMode,
    pair_filters: list[PairFilter],
) -> dict[tuple[Paradigm, PairFilter], dict[str, float]]:
    tables = {pf: ctx.table(pair_filter=pf) for pf in pair_filters}

    def draw(seed: int):
        assignment = ctx.assignment(p, seed)
        sights = ctx.sights(fov_mode, assignment, PARADIGMS)
        reports = {
            (paradigm, pf): ctx.report(table, sights[paradigm], penetration=p, paradigm=paradigm, seed=seed)
            for paradigm in PARADIGMS
            for pf, table in tables.items()
        }
        for pf in pair_filters:
            check_dominance(
                reports[(Paradigm.NONE, pf)],
                reports[(Paradigm.SYMMETRIC, pf)],
                reports[(Paradigm.ASYMMETRIC, pf)],
            )
        return reports

    reports = ctx.map_draws(draw, ctx.seeds())
    return {key: mean_rtl([r[key] for r in reports]) for key in reports[0]}


def run_paradigm_compare(ctx: ExperimentContext) -> ExperimentResult:
    """Side-by-side symmetric/asymmetric results at every penetration rate."""
    fov_mode = sweep_fov_mode(ctx, FovMode.HETEROGENEOUS_120_360)
    main_filter = ctx.run_config.pair_filter
    pair_filters = pair_types_for(main_filter)
    filters = sorted(set(pair_filters) | {main_filter}, key=lambda pf: pf.value)
    out = ctx.output_dir
    result = ExperimentResult()

    top: dict[tuple[Paradigm, PairFilter, float], float] = {}
    stats = []
    for p in sweep_rates(ctx.run_config.penetration_rates):
        logger.info("paradigm compare %s: p=%s", ctx.name, rate_label(p))
        means = paradigm_mean_rtl(ctx, p, fov_mode, filters)
        for paradigm in (Paradigm.SYMMETRIC, Paradigm.ASYMMETRIC):
            rtl = means[(paradigm, main_filter)]
            if rtl:
                path = out / f"ccdf_{paradigm.value}_p{rate_label(p)}.csv"
                result.files.append(write_ccdf(build_ccdf(list(rtl.values())), path))
            for pf in pair_filters:
                values = list(means[(paradigm, pf)].values())
                stats.append(stats_row(f"{ctx.name}/{pf.value}/{paradigm.value}/p{rate_label(p)}", values))
                top[(paradigm, pf, p)] = top_decile_mean(values) if values else 0.0

    rows = []
    for pf in pair_filters:
        for paradigm in (Paradigm.SYMMETRIC, Paradigm.ASYMMETRIC):
            baseline = top[(paradigm, pf, 0.0)]
            for p in ctx.run_config.penetration_rates:
                value = top[(paradigm, pf, p)]
                rows.append(
                    {
                        "scenario": ctx.name,
                        "pair_type": pf.value,
                        "paradigm": paradigm.value,
                        "p": p,
                        "top10_mean_ms": value,
                        "normalized_pct": normalized_reduction(value, baseline).value,
                    }
                )
    result.files.append(write_stats(stats, out / "stats.csv"))
    result.files.append(write_rows(rows, PARADIGM_COLUMNS, out / "paradigm.csv"))
    result.summary = {
        "fov_mode": fov_mode.value,
        "top10_mean_ms": {
            f"{paradigm.value}/{pf.value}/p{rate_label(p)}": value
            for (paradigm, pf, p), value in sorted(top.items())
        },
    }
    return result


__all__ = ["PARADIGMS", "check_dominance", "paradigm_mean_rtl", "run_paradigm_compare"]
