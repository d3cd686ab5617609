"""
CSV / JSON Emitters
===================

Every output file of a run, with fixed headers:

    rtl           agent_id,rtl_ms,risk_level
    pairs         i,j,F_ms,event_count
    ccdf          value_ms,fraction
    stats         group,cqd,cv_mad,top10_mean_ms,n
    heatmap       row,col,raw_ms,normalized
    penetration   scenario,pair_type,p,normalized_pct
    sensitivity   config,paradigm,p,top10_mean_ms
    visibility    frame,observer,target
    assignment    agent_id,connected
    dispersion    group,metric,cqd,cv_mad
    summary       group,q1,median,q3,whisker_low,whisker_high,mean,max,n
    levels        risk_level,count
    paradigm      scenario,pair_type,paradigm,p,top10_mean_ms,normalized_pct

Floats are written with a fixed format and rows in a fixed order so two runs of the same
plan give byte-identical files. Undefined statistics are written as ``nan``.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from occlusion_risk.analytics.heatmap import HeatmapGrid
from occlusion_risk.analytics.statistics import Ccdf, DistributionSummary, cqd, cv_mad, top_decile_mean
from occlusion_risk.models.run_config import RiskConfig
from occlusion_risk.perception.visibility import VisibilityRelation
from occlusion_risk.risk.events import risk_level
from occlusion_risk.risk.report import RiskReport

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.6f"

RTL_COLUMNS = ["agent_id", "rtl_ms", "risk_level"]
PAIR_COLUMNS = ["i", "j", "F_ms", "event_count"]
CCDF_COLUMNS = ["value_ms", "fraction"]
STATS_COLUMNS = ["group", "cqd", "cv_mad", "top10_mean_ms", "n"]
HEATMAP_COLUMNS = ["row", "col", "raw_ms", "normalized"]
PENETRATION_COLUMNS = ["scenario", "pair_type", "p", "normalized_pct"]
SENSITIVITY_COLUMNS = ["config", "paradigm", "p", "top10_mean_ms"]
VISIBILITY_COLUMNS = ["frame", "observer", "target"]
ASSIGNMENT_COLUMNS = ["agent_id", "connected"]
DISPERSION_COLUMNS = ["group", "metric", "cqd", "cv_mad"]
SUMMARY_COLUMNS = ["group", "q1", "median", "q3", "whisker_low", "whisker_high", "mean", "max", "n"]


def write_rows(rows: Iterable[Mapping[str, object]], columns: Sequence[str], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(list(rows), columns=list(columns))
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="nan", lineterminator="\n")
    logger.info("wrote %s (%d rows)", path, len(frame))
    return path


def write_rtl(rtl: Mapping[str, float], config: RiskConfig, path: str | Path) -> Path:
    rows = [
        {"agent_id": a, "rtl_ms": float(rtl[a]), "risk_level": risk_level(rtl[a], config).value}
        for a in sorted(rtl)
    ]
    return write_rows(rows, RTL_COLUMNS, path)


def write_pair_table(report: RiskReport, path: str | Path) -> Path:
    rows = [
        {"i": i, "j": j, "F_ms": value, "event_count": len(report.events.get((i, j), ()))}
        for (i, j), value in sorted(report.pair_F.items())
    ]
    return write_rows(rows, PAIR_COLUMNS, path)


def write_ccdf(ccdf: Ccdf, path: str | Path) -> Path:
    rows = [{"value_ms": v, "fraction": f} for v, f in ccdf.points()]
    return write_rows(rows, CCDF_COLUMNS, path)


def stats_row(group: str, samples: Sequence[float] | np.ndarray) -> dict[str, object]:
    """One ``stats`` row; an empty group gives nan statistics and n = 0."""
    arr = np.asarray(samples, dtype=float)
    if arr.size == 0:
        logger.warning("group %s is empty", group)
        return {"group": group, "cqd": np.nan, "cv_mad": np.nan, "top10_mean_ms": np.nan, "n": 0}
    return {
        "group": group,
        "cqd": cqd(arr).value,
        "cv_mad": cv_mad(arr).value,
        "top10_mean_ms": top_decile_mean(arr),
        "n": int(arr.size),
    }


def write_stats(rows: Iterable[Mapping[str, object]], path: str | Path) -> Path:
    return write_rows(rows, STATS_COLUMNS, path)


def write_heatmap(grid: HeatmapGrid, path: str | Path) -> Path:
    return write_rows(grid.rows(), HEATMAP_COLUMNS, path)


def write_penetration_table(rows: Iterable[Mapping[str, object]], path: str | Path) -> Path:
    return write_rows(rows, PENETRATION_COLUMNS, path)


def write_sensitivity_table(rows: Iterable[Mapping[str, object]], path: str | Path) -> Path:
    return write_rows(rows, SENSITIVITY_COLUMNS, path)


def write_dispersion(rows: Iterable[Mapping[str, object]], path: str | Path) -> Path:
    return write_rows(rows, DISPERSION_COLUMNS, path)


def write_summary(summaries: Mapping[str, DistributionSummary], path: str | Path) -> Path:
    rows = [{"group": group, **summary.model_dump()} for group, summary in summaries.items()]
    return write_rows(rows, SUMMARY_COLUMNS, path)


def write_visibility(relations: Mapping[int, VisibilityRelation], path: str | Path) -> Path:
    rows = [
        {"frame": frame, "observer": o, "target": t}
        for frame in sorted(relations)
        for o, t in sorted(relations[frame].sees)
    ]
    return write_rows(rows, VISIBILITY_COLUMNS, path)


def write_assignment(rows: Iterable[Mapping[str, object]], path: str | Path) -> Path:
    return write_rows(rows, ASSIGNMENT_COLUMNS, path)


def write_manifest(manifest: Mapping[str, object], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info("wrote %s", path)
    return path


__all__ = [
    "FLOAT_FORMAT",
    "stats_row",
    "write_assignment",
    "write_ccdf",
    "write_dispersion",
    "write_heatmap",
    "write_manifest",
    "write_pair_table",
    "write_penetration_table",
    "write_rows",
    "write_rtl",
    "write_sensitivity_table",
    "write_stats",
    "write_summary",
    "write_visibility",
]
