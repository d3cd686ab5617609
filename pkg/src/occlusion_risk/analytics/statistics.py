"""
Distribution Statistics
=======================

Robust summaries of per-agent RTL samples.

    quantile              linear interpolation between order statistics (type 7)
    cqd                   (Q3 - Q1) / (Q3 + Q1)
    cv_mad                100 * 1.4826 * MAD / median   (percent)
    top_decile_mean       mean of the ceil(N / 10) largest values
    normalized_reduction  100 * value / baseline        (percent)
    build_ccdf            fraction of samples strictly greater than each distinct value

An empty sample raises ``StatisticsError``. A statistic whose denominator is zero is
not an error: it comes back as ``StatResult(defined=False)`` with the reason attached.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel
from scipy.stats import median_abs_deviation

from occlusion_risk.errors import StatisticsError
from occlusion_risk.models.scene import Scenario

logger = logging.getLogger(__name__)

MAD_SCALE = 1.4826


class StatResult(BaseModel):
    """A statistic that may be undefined for the given sample."""

    value: float = math.nan
    defined: bool = True
    reason: str | None = None

    @classmethod
    def undefined(cls, reason: str) -> "StatResult":
        logger.warning("statistic undefined: %s", reason)
        return cls(value=math.nan, defined=False, reason=reason)

    def __float__(self) -> float:
        return self.value


def _sample(samples: Sequence[float] | np.ndarray) -> np.ndarray:
    arr = np.asarray(samples, dtype=float).reshape(-1)
    if arr.size == 0:
        raise StatisticsError("empty sample")
    return arr


def quantile(samples: Sequence[float] | np.ndarray, q: float) -> float:
    """
    Examples:
        [0, 10], q 0.25 -> 2.5
        [5], any q      -> 5
    """
    if not 0.0 <= q <= 1.0:
        raise StatisticsError(f"quantile level {q} outside [0, 1]")
    return float(np.quantile(_sample(samples), q, method="linear"))


def cqd(samples: Sequence[float] | np.ndarray) -> StatResult:
    """Coefficient of quartile dispersion; undefined when Q1 + Q3 = 0."""
    arr = _sample(samples)
    q1, q3 = quantile(arr, 0.25), quantile(arr, 0.75)
    if q1 + q3 == 0.0:
        return StatResult.undefined("Q1 + Q3 is zero")
    return StatResult(value=(q3 - q1) / (q3 + q1))


def cv_mad(samples: Sequence[float] | np.ndarray) -> StatResult:
    """
    Robust coefficient of variation in percent; undefined when the median is zero.

    Example:
        [1, 2, 3, 4, 100] -> MAD 1, median 3 -> 49.42 %
    """
    arr = _sample(samples)
    median = float(np.median(arr))
    if median == 0.0:
        return StatResult.undefined("median is zero")
    mad = float(median_abs_deviation(arr, scale=1.0))
    return StatResult(value=100.0 * MAD_SCALE * mad / median)


def top_decile_mean(samples: Sequence[float] | np.ndarray) -> float:
    arr = np.sort(_sample(samples))
    count = math.ceil(arr.size / 10)
    return float(arr[-count:].mean())


def normalized_reduction(value_at_p: float, baseline_at_0: float) -> StatResult:
    """Value as a percentage of the p = 0 baseline."""
    if baseline_at_0 == 0.0:
        return StatResult.undefined("baseline is zero")
    return StatResult(value=100.0 * value_at_p / baseline_at_0)


# ═══════════════════════════════════════════════════════════════════════════
# CCDF
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class Ccdf:
    """Distinct sorted values and the fraction of samples strictly greater than each."""

    values: np.ndarray
    fractions: np.ndarray
    n: int

    def points(self) -> list[tuple[float, float]]:
        return [(float(v), float(f)) for v, f in zip(self.values, self.fractions)]


def build_ccdf(samples: Sequence[float] | np.ndarray) -> Ccdf:
    """
    Examples:
        [1, 2, 3] -> (1, 2/3), (2, 1/3), (3, 0)
        [c, c]    -> (c, 0)
    """
    arr = np.sort(_sample(samples))
    values = np.unique(arr)
    greater = arr.size - np.searchsorted(arr, values, side="right")
    return Ccdf(values=values, fractions=greater / arr.size, n=int(arr.size))


# ═══════════════════════════════════════════════════════════════════════════
# Group summaries
# ═══════════════════════════════════════════════════════════════════════════

class DistributionSummary(BaseModel):
    """Box-plot ready summary of one sample."""

    q1: float
    median: float
    q3: float
    whisker_low: float
    whisker_high: float
    mean: float
    max: float
    n: int


def distribution_summary(samples: Sequence[float] | np.ndarray) -> DistributionSummary:
    """Quartiles plus 1.5 IQR whiskers clipped to the most extreme data inside the fences."""
    arr = _sample(samples)
    q1, median, q3 = (quantile(arr, q) for q in (0.25, 0.5, 0.75))
    iqr = q3 - q1
    inside = arr[(arr >= q1 - 1.5 * iqr) & (arr <= q3 + 1.5 * iqr)]
    return DistributionSummary(
        q1=q1,
        median=median,
        q3=q3,
        whisker_low=float(inside.min()),
        whisker_high=float(inside.max()),
        mean=float(arr.mean()),
        max=float(arr.max()),
        n=int(arr.size),
    )


class TrafficExposure(BaseModel):
    vehicles_per_minute: float
    vru_ratio: float


def traffic_exposure(scenario: Scenario) -> TrafficExposure:
    """Distinct vehicles per minute of scenario time, and the VRU share of distinct agents."""
    duration_min = scenario.duration_seconds / 60.0
    agents = len(scenario.agent_ids)
    return TrafficExposure(
        vehicles_per_minute=len(scenario.vehicle_ids) / duration_min if duration_min > 0 else 0.0,
        vru_ratio=len(scenario.vru_ids) / agents if agents else 0.0,
    )


def dispersion_comparison(
    rtl_samples: dict[str, Sequence[float]],
    other_samples: dict[str, Sequence[float]],
    other_name: str = "mtl",
) -> list[dict[str, object]]:
    """
    Rows ``group,metric,cqd,cv_mad`` for RTL next to an externally computed metric.

    Groups present in only one of the two mappings get only that metric's row.
    """
    rows = []
    for group in sorted(set(rtl_samples) | set(other_samples)):
        for metric, source in (("rtl", rtl_samples), (other_name, other_samples)):
            if group not in source or len(source[group]) == 0:
                continue
            rows.append(
                {
                    "group": group,
                    "metric": metric,
                    "cqd": cqd(source[group]).value,
                    "cv_mad": cv_mad(source[group]).value,
                }
            )
    return rows


__all__ = [
    "Ccdf",
    "DistributionSummary",
    "MAD_SCALE",
    "StatResult",
    "TrafficExposure",
    "build_ccdf",
    "cqd",
    "cv_mad",
    "dispersion_comparison",
    "distribution_summary",
    "normalized_reduction",
    "quantile",
    "top_decile_mean",
    "traffic_exposure",
]
