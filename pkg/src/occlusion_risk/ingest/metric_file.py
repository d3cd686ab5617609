"""
Comparison Metric Samples
=========================

Per-agent values of another risk metric (for example a tracking-loss duration computed
by an external tool), compared against RTL by their dispersion:

    group,agent_id,value
    scene/veh_veh,veh_001,412.0

``group`` uses the same labels as the stats files (``{scenario}/{pair_type}``).
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from occlusion_risk.errors import InputError

logger = logging.getLogger(__name__)

METRIC_COLUMNS = ["group", "agent_id", "value"]


def parse_metric_samples(path: str | Path) -> dict[str, list[float]]:
    """Samples per group, in file order."""
    path = Path(path)
    if not path.is_file():
        raise InputError("comparison metric file not found", path=path)
    try:
        df = pd.read_csv(path, dtype={"group": str, "agent_id": str}, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise InputError(f"unreadable comparison metric file ({exc})", path=path) from exc

    missing = [c for c in METRIC_COLUMNS if c not in df.columns]
    if missing:
        raise InputError(f"missing column(s) {', '.join(missing)}", path=path)
    values = pd.to_numeric(df["value"], errors="coerce")
    bad = np.flatnonzero(~np.isfinite(values.to_numpy(dtype=float)))
    if len(bad):
        row = int(bad[0]) + 2
        raise InputError(f"'{df['value'].iloc[bad[0]]}' is not a finite number", path=path, row=row, column="value")

    samples: dict[str, list[float]] = {}
    for group, value in zip(df["group"], values):
        samples.setdefault(group, []).append(float(value))
    logger.info("Loaded %s: %d groups", path.name, len(samples))
    return samples


__all__ = ["parse_metric_samples", "METRIC_COLUMNS"]
