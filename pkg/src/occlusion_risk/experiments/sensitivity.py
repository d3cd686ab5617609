"""
Sensitivity Analysis
====================

Re-runs the paradigm comparison under named variations of the risk coefficients:

    Baseline   the run's own RiskConfig
    K1 / K2    k_overlap (side, no-side) = 0.8 / 0.6  and  5.0 / 3.0
    K3 / K4    k_no-overlap approaching (side, no-side) = 0.1 / 0.08  and  0.8 / 0.6
    K5         k_static (approach, separate) = 0.08 / 0.05
    M_s / M_l  safety buffer 0.1 m / 0.5 m
    D_s / D_l  prediction horizon 0.1 s / 1.0 s

Visibility and connectivity do not depend on any of these, so each draw computes its
sight vectors once and evaluates every configuration on them.

File: sensitivity.csv (config,paradigm,p,top10_mean_ms)
"""

from __future__ import annotations

import logging

from occlusion_risk.analytics.emitters import write_sensitivity_table
from occlusion_risk.analytics.statistics import top_decile_mean
from occlusion_risk.experiments.context import ExperimentContext, ExperimentResult, mean_rtl
from occlusion_risk.experiments.penetration import rate_label, sweep_fov_mode
from occlusion_risk.models.run_config import FovMode, Paradigm, RiskConfig

logger = logging.getLogger(__name__)

SENSITIVITY_PARADIGMS = [Paradigm.SYMMETRIC, Paradigm.ASYMMETRIC]


def sensitivity_configs(base: RiskConfig, static_from_table_note: bool = False) -> dict[str, RiskConfig]:
    """
    Ordered mapping name -> RiskConfig.

    With ``static_from_table_note`` the baseline (and every variation except K5) uses
    k_static 0.4 / 0.2 instead of the run's own values.
    """
    if static_from_table_note:
        base = base.model_copy(update={"k_static_approach": 0.4, "k_static_separate": 0.2})
    variations = {
        "Baseline": {},
        "K1": {"k_overlap_side": 0.8, "k_overlap_noside": 0.6},
        "K2": {"k_overlap_side": 5.0, "k_overlap_noside": 3.0},
        "K3": {"k_approach_side": 0.1, "k_approach_noside": 0.08},
        "K4": {"k_approach_side": 0.8, "k_approach_noside": 0.6},
        "K5": {"k_static_approach": 0.08, "k_static_separate": 0.05},
        "M_s": {"buffer_margin": 0.1},
        "M_l": {"buffer_margin": 0.5},
        "D_s": {"prediction_horizon": 0.1},
        "D_l": {"prediction_horizon": 1.0},
    }
    return {name: RiskConfig.model_validate({**base.model_dump(), **update}) for name, update in variations.items()}


def run_sensitivity(ctx: ExperimentContext) -> ExperimentResult:
    """Top-decile mean RTL for every (configuration, paradigm, penetration rate)."""
    fov_mode = sweep_fov_mode(ctx, FovMode.HETEROGENEOUS_120_360)
    configs = sensitivity_configs(ctx.risk, ctx.run_config.static_from_table_note)
    tables = {name: ctx.table(config) for name, config in configs.items()}
    rows = []
    for p in ctx.run_config.penetration_rates:
        logger.info("sensitivity %s: p=%s, %d configurations", ctx.name, rate_label(p), len(configs))

        def draw(seed: int, p: float = p):
            assignment = ctx.assignment(p, seed)
            sights = ctx.sights(fov_mode, assignment, SENSITIVITY_PARADIGMS)
            return {
                (name, paradigm): ctx.report(table, sights[paradigm], penetration=p, paradigm=paradigm, seed=seed)
                for name, table in tables.items()
                for paradigm in SENSITIVITY_PARADIGMS
            }

        reports = ctx.map_draws(draw, ctx.seeds())
        for name in configs:
            for paradigm in SENSITIVITY_PARADIGMS:
                values = list(mean_rtl([r[(name, paradigm)] for r in reports]).values())
                rows.append(
                    {
                        "config": name,
                        "paradigm": paradigm.value,
                        "p": p,
                        "top10_mean_ms": top_decile_mean(values) if values else 0.0,
                    }
                )

    result = ExperimentResult(files=[write_sensitivity_table(rows, ctx.output_dir / "sensitivity.csv")])
    result.summary = {"configs": list(configs), "fov_mode": fov_mode.value, "cells": len(rows)}
    return result


__all__ = ["SENSITIVITY_PARADIGMS", "run_sensitivity", "sensitivity_configs"]
