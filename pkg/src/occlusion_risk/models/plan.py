"""
Sweep Plan
==========

A plan names the inputs of a run and the experiment to execute:

    {
      "scenario_path": "scene.csv",
      "map_path": "map.json",
      "config_path": "config.json",
      "experiment": "penetration_sweep",
      "penetration_rates": [0, 0.25, 0.5, 0.75, 1.0],
      "repetitions": 20,
      "base_seed": 0,
      "output_dir": "out/penetration"
    }

Plan fields override the run-config file; CLI flags override the plan.
Repetition ``r`` (0-based) uses seed ``base_seed + r``.
"""

from typing import Optional

from pydantic import BaseModel, Field, field_validator

from occlusion_risk.models.run_config import ExperimentKind, FovMode, Paradigm, PairFilter


class SweepPlan(BaseModel):
    """One experiment over one scenario."""

    scenario_path: str = Field(description="Trajectory CSV")
    map_path: Optional[str] = Field(default=None, description="Map JSON with occluder polygons")
    config_path: Optional[str] = Field(default=None, description="Run-config JSON")
    experiment: ExperimentKind = ExperimentKind.BASELINE

    penetration_rates: Optional[list[float]] = None
    repetitions: Optional[int] = Field(default=None, ge=1)
    base_seed: Optional[int] = None
    output_dir: Optional[str] = None

    paradigm: Optional[Paradigm] = None
    fov_mode: Optional[FovMode] = None
    pair_filter: Optional[PairFilter] = None

    @field_validator("penetration_rates")
    @classmethod
    def _rates_in_range(cls, rates: Optional[list[float]]) -> Optional[list[float]]:
        if rates is not None:
            for rate in rates:
                if not 0.0 <= rate <= 1.0:
                    raise ValueError(f"penetration rate {rate} outside [0, 1]")
        return rates

    def overrides(self) -> dict:
        """RunConfig fields this plan sets explicitly."""
        mapping = {
            "penetration_rates": self.penetration_rates,
            "repetitions": self.repetitions,
            "seed": self.base_seed,
            "output_dir": self.output_dir,
            "paradigm": self.paradigm,
            "fov_mode": self.fov_mode,
            "pair_filter": self.pair_filter,
        }
        return {key: value for key, value in mapping.items() if value is not None}


__all__ = ["SweepPlan"]
