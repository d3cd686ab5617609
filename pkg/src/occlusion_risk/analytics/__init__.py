"""Statistics, heatmaps and report files."""

from occlusion_risk.analytics.heatmap import (
    GridSpec,
    HeatmapGrid,
    HeatSource,
    accumulate_heatmap,
    high_risk_events,
)
from occlusion_risk.analytics.statistics import (
    Ccdf,
    StatResult,
    build_ccdf,
    cqd,
    cv_mad,
    dispersion_comparison,
    distribution_summary,
    normalized_reduction,
    quantile,
    top_decile_mean,
    traffic_exposure,
)

__all__ = [
    "Ccdf",
    "GridSpec",
    "HeatSource",
    "HeatmapGrid",
    "StatResult",
    "accumulate_heatmap",
    "build_ccdf",
    "cqd",
    "cv_mad",
    "dispersion_comparison",
    "distribution_summary",
    "high_risk_events",
    "normalized_reduction",
    "quantile",
    "top_decile_mean",
    "traffic_exposure",
]
