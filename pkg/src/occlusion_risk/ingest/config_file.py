"""
Run-Config and Plan Parsers
===========================

Run-config files are JSON documents holding any subset of the RiskConfig and RunConfig
fields. Risk coefficients may sit at the top level or under a ``"risk"`` key:

    {
      "k_overlap_side": 3.0,
      "buffer_margin": 0.3,
      "penetration_rates": [0, 0.25, 0.5, 0.75, 1.0],
      "repetitions": 20,
      "seed": 7,
      "paradigm": "symmetric",
      "fov_mode": "homogeneous_360",
      "pair_filter": "veh_veh",
      "output_dir": "out"
    }

An empty document (or an empty file) yields all defaults.

Plan files name the inputs and the experiment (see ``SweepPlan``).
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from pydantic import ValidationError

from occlusion_risk.errors import InputError
from occlusion_risk.models.plan import SweepPlan
from occlusion_risk.models.run_config import RiskConfig, RunConfig

logger = logging.getLogger(__name__)


def _read_json(path: Path, what: str) -> dict:
    if not path.is_file():
        raise InputError(f"{what} file not found", path=path)
    text = path.read_text(encoding="utf-8").strip()
    if not text:
        return {}
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON ({exc.msg})", path=path, row=exc.lineno) from exc
    if not isinstance(document, dict):
        raise InputError(f"{what} must be a JSON object", path=path)
    return document


def _first_error(exc: ValidationError) -> tuple[str, str | None]:
    error = exc.errors()[0]
    column = ".".join(str(part) for part in error.get("loc", ())) or None
    return error["msg"], column


def build_run_config(document: dict, *, path: str | Path | None = None) -> RunConfig:
    """Split a flat or nested document into RiskConfig / RunConfig fields and validate."""
    document = dict(document)
    risk_fields = dict(document.pop("risk", None) or {})
    for name in list(document):
        if name in RiskConfig.model_fields:
            risk_fields[name] = document.pop(name)
    try:
        risk = RiskConfig.model_validate(risk_fields)
        return RunConfig.model_validate({**document, "risk": risk})
    except ValidationError as exc:
        message, column = _first_error(exc)
        raise InputError(message, path=path, column=column) from exc


def parse_config(path: str | Path) -> RunConfig:
    """
    Parse a run-config file. The returned RunConfig carries the RiskConfig as ``.risk``.

    Penetration rates come back deduplicated and sorted ascending.

    Raises:
        InputError: unreadable JSON, a rate outside [0, 1], a negative coefficient, an unknown field
    """
    path = Path(path)
    config = build_run_config(_read_json(path, "config"), path=path)
    logger.info(
        "Loaded %s: rates=%s reps=%d paradigm=%s fov=%s",
        path.name, list(config.penetration_rates), config.repetitions,
        config.paradigm.value, config.fov_mode.value,
    )
    return config


def resolve_run_config(
    plan: SweepPlan,
    overrides: dict | None = None,
    *,
    default_output_dir: str | None = None,
    default_repetitions: int | None = None,
) -> RunConfig:
    """
    Layer the run-config file, the plan and explicit overrides (CLI flags or request
    fields), later layers winning. Process defaults fill output_dir and repetitions only
    when no layer sets them.
    """
    document: dict = {}
    config_path = None
    if plan.config_path:
        config_path = Path(plan.config_path)
        document = _read_json(config_path, "config")
    if default_output_dir is not None:
        document.setdefault("output_dir", default_output_dir)
    if default_repetitions is not None:
        document.setdefault("repetitions", default_repetitions)
    document.update(plan.overrides())
    document.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return build_run_config(document, path=config_path)


def load_plan(path: str | Path) -> SweepPlan:
    """Parse a plan file; relative input/output paths resolve against the plan's directory."""
    path = Path(path)
    document = _read_json(path, "plan")
    base = path.parent
    for key in ("scenario_path", "map_path", "config_path", "output_dir"):
        value = document.get(key)
        if value and not Path(value).is_absolute():
            document[key] = str(base / value)
    try:
        return SweepPlan.model_validate(document)
    except ValidationError as exc:
        message, column = _first_error(exc)
        raise InputError(message, path=path, column=column) from exc


__all__ = ["parse_config", "build_run_config", "load_plan", "resolve_run_config"]
