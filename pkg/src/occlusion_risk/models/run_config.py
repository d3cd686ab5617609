"""
Run Configuration Models
========================

``RiskConfig`` holds every tunable coefficient of the risk metric; ``RunConfig`` holds
what a run does with it (penetration rates, Monte Carlo repetitions, paradigm, FoV mode,
pair filter, output directory) and embeds the RiskConfig.

Both are validated pydantic models: an out-of-range value is rejected when the model is
built, never later in the middle of a sweep.

DEFAULTS:
---------
    k table (dynamic)       3 / 1 / 0.4 / 0.2 / 0.01
    k static                0.05 approaching, 0.01 separating
    prediction horizon      0.6 s
    lateral sway            0.05 x width
    safety margin           0.7 m base + 0.3 m buffer
    perception range        75 m
    communication range     200 m
    FoV                     360 deg connected, 120 deg non-connected
    risk levels             < 50 ms low, 50-200 ms medium, > 200 ms high
"""

from __future__ import annotations

import hashlib
import json
import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

FULL_CIRCLE = 2.0 * math.pi
FORWARD_120 = math.radians(120.0)


class Paradigm(StrEnum):
    NONE = "none"
    SYMMETRIC = "symmetric"
    ASYMMETRIC = "asymmetric"


class FovMode(StrEnum):
    HOMOGENEOUS_360 = "homogeneous_360"
    HETEROGENEOUS_120_360 = "heterogeneous_120_360"
    ALL_120 = "all_120"


class PairFilter(StrEnum):
    VEH_VEH = "veh_veh"
    VEH_VRU = "veh_vru"
    BOTH = "both"

    def accepts(self, kind: str | None) -> bool:
        if kind is None:
            return False
        return self is PairFilter.BOTH or kind == self.value


class ExperimentKind(StrEnum):
    BASELINE = "baseline"
    PENETRATION_SWEEP = "penetration_sweep"
    PARADIGM_COMPARE = "paradigm_compare"
    SENSITIVITY = "sensitivity"


class RiskLevel(StrEnum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


class RiskConfig(BaseModel):
    """All coefficients of the RTL metric and of the perception/communication model."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    # k for moving pairs; units follow the kΔv/d² convention (see DESIGN.md)
    k_overlap_side: float = Field(default=3.0, ge=0.0)
    k_overlap_noside: float = Field(default=1.0, ge=0.0)
    k_approach_side: float = Field(default=0.4, ge=0.0)
    k_approach_noside: float = Field(default=0.2, ge=0.0)
    k_separate: float = Field(default=0.01, ge=0.0)

    # k when either agent is stationary
    k_static_approach: float = Field(default=0.05, ge=0.0)
    k_static_separate: float = Field(default=0.01, ge=0.0)

    prediction_horizon: float = Field(default=0.6, gt=0.0, description="seconds")
    lateral_sway_coeff: float = Field(default=0.05, ge=0.0)
    base_lateral_margin: float = Field(default=0.7, ge=0.0, description="meters")
    buffer_margin: float = Field(default=0.3, ge=0.0, description="meters")

    perception_range: float = Field(default=75.0, gt=0.0, description="meters")
    comm_range: float = Field(default=200.0, gt=0.0, description="meters")
    fov_connected: float = Field(default=FULL_CIRCLE, gt=0.0, le=FULL_CIRCLE, description="radians")
    fov_nonconnected: float = Field(default=FORWARD_120, gt=0.0, le=FULL_CIRCLE, description="radians")

    motion_threshold: float = Field(default=0.05, ge=0.0, description="m/s")
    min_distance_clamp: float = Field(default=0.1, gt=0.0, description="meters")

    high_risk_threshold: float = Field(default=200.0, ge=0.0, description="ms")
    medium_risk_threshold: float = Field(default=50.0, ge=0.0, description="ms")

    @model_validator(mode="after")
    def _thresholds_ordered(self) -> "RiskConfig":
        if self.medium_risk_threshold > self.high_risk_threshold:
            raise ValueError(
                f"medium_risk_threshold {self.medium_risk_threshold} exceeds "
                f"high_risk_threshold {self.high_risk_threshold}"
            )
        return self

    @property
    def safety_margin(self) -> float:
        """Total safety margin added around reachable sets (base + buffer)."""
        return self.base_lateral_margin + self.buffer_margin

    def fingerprint(self) -> str:
        """sha256 of the canonical JSON form; identical configs give identical hashes."""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class RunConfig(BaseModel):
    """
    What a run does. Every field is optional in the run-config file; missing fields take
    the defaults below and ``risk`` takes the RiskConfig defaults.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    risk: RiskConfig = Field(default_factory=RiskConfig)
    penetration_rates: tuple[float, ...] = Field(default=(0.0, 0.25, 0.5, 0.75, 0.9, 1.0))
    repetitions: int = Field(default=20, ge=1)
    seed: int = Field(default=0)
    paradigm: Paradigm = Paradigm.NONE
    fov_mode: FovMode = FovMode.ALL_120
    pair_filter: PairFilter = PairFilter.BOTH
    output_dir: str = "outputs"

    heatmap_radius: float = Field(default=5.0, gt=0.0, description="meters")
    heatmap_cell_size: float = Field(default=1.0, gt=0.0, description="meters")
    static_from_table_note: bool = Field(
        default=False,
        description="Sensitivity baseline uses k_static 0.4/0.2 instead of 0.05/0.01",
    )
    comparison_metric_path: str | None = Field(
        default=None,
        description="CSV of per-agent values of another metric; the baseline compares its dispersion with RTL",
    )
    comparison_metric_name: str = "mtl"

    @field_validator("penetration_rates", mode="after")
    @classmethod
    def _normalize_rates(cls, rates: tuple[float, ...]) -> tuple[float, ...]:
        for rate in rates:
            if not (0.0 <= rate <= 1.0) or math.isnan(rate):
                raise ValueError(f"penetration rate {rate} outside [0, 1]")
        return tuple(sorted(set(rates)))


__all__ = [
    "ExperimentKind",
    "FovMode",
    "Paradigm",
    "PairFilter",
    "RiskConfig",
    "RiskLevel",
    "RunConfig",
    "FULL_CIRCLE",
    "FORWARD_120",
]
