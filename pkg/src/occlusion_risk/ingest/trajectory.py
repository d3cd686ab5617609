"""
Trajectory File Parser
======================

Reads the canonical trajectory CSV into a ``Scenario`` and writes it back.

FILE FORMAT:
------------
UTF-8, header row required, one row per (frame, agent):

    frame,agent_id,class,x,y,vx,vy,heading,length,width
    0,veh_1,car,0.0,0.0,10.0,0.0,,4.5,1.8

- ``class`` is one of car, truck, bus, pedestrian, bicycle, motorcycle, tricycle
- ``heading`` may be empty; it is then derived from velocity, falling back to the
  agent's last known heading when it is (nearly) stationary
- lengths in meters, velocities in m/s; no unit autodetection

Rows may appear in any order; they are sorted by (frame, agent_id) after load.
Row numbers in error messages count the header as row 1.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path

import pandas as pd

from occlusion_risk.errors import InputError, ScenarioValidationError
from occlusion_risk.models.run_config import RiskConfig
from occlusion_risk.models.scene import (
    DEFAULT_TICK_SECONDS,
    AgentClass,
    AgentState,
    Scenario,
    derive_heading,
)

logger = logging.getLogger(__name__)

COLUMNS = ["frame", "agent_id", "class", "x", "y", "vx", "vy", "heading", "length", "width"]
NUMERIC_COLUMNS = ["x", "y", "vx", "vy", "length", "width"]
DEFAULT_MOTION_THRESHOLD: float = RiskConfig.model_fields["motion_threshold"].default


def _read_frame(path: Path) -> pd.DataFrame:
    if not path.is_file():
        raise InputError("trajectory file not found", path=path)
    try:
        df = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except (pd.errors.ParserError, UnicodeDecodeError) as exc:
        raise InputError(f"unreadable trajectory file ({exc})", path=path) from exc
    except pd.errors.EmptyDataError as exc:
        raise InputError("trajectory file is empty (header row required)", path=path) from exc

    df = df.fillna("")
    df.columns = [c.strip() for c in df.columns]
    missing = [c for c in COLUMNS if c not in df.columns and c != "heading"]
    if missing:
        raise InputError(f"missing column(s) {', '.join(missing)}", path=path)
    if "heading" not in df.columns:
        df["heading"] = ""
    return df[COLUMNS].rename(columns={"class": "class_label"})


def _parse_number(raw: str, *, path: Path, row: int, column: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise InputError(f"'{raw}' is not a number", path=path, row=row, column=column) from None
    if not math.isfinite(value):
        raise InputError(f"'{raw}' is not a finite number", path=path, row=row, column=column)
    return value


def parse_trajectory(
    path: str | Path,
    *,
    motion_threshold: float = DEFAULT_MOTION_THRESHOLD,
    tick_seconds: float = DEFAULT_TICK_SECONDS,
) -> Scenario:
    """
    Parse a trajectory CSV into a Scenario (states only, no occluders).

    Raises:
        InputError: malformed row (names the row and column) or unknown class
        ScenarioValidationError: an agent id carries more than one class
    """
    path = Path(path)
    df = _read_frame(path)

    records = []
    classes: dict[str, AgentClass] = {}
    for index, raw in enumerate(df.itertuples(index=False)):
        row = index + 2
        frame_raw = raw.frame.strip()
        try:
            frame = int(frame_raw)
        except ValueError:
            raise InputError(
                f"'{frame_raw}' is not an integer frame", path=path, row=row, column="frame"
            ) from None

        agent_id = raw.agent_id.strip()
        if not agent_id:
            raise InputError("empty agent id", path=path, row=row, column="agent_id")

        label = raw.class_label.strip().lower()
        try:
            agent_class = AgentClass(label)
        except ValueError:
            raise InputError(
                f"unknown class at row {row}: '{label}'", path=path, row=row, column="class"
            ) from None
        previous = classes.setdefault(agent_id, agent_class)
        if previous is not agent_class:
            raise ScenarioValidationError(
                f"agent '{agent_id}' has inconsistent class ({previous} vs {agent_class})",
                path=path,
                row=row,
                column="class",
            )

        values = {
            column: _parse_number(getattr(raw, column), path=path, row=row, column=column)
            for column in NUMERIC_COLUMNS
        }
        heading_raw = raw.heading.strip()
        heading = (
            _parse_number(heading_raw, path=path, row=row, column="heading") if heading_raw else None
        )
        records.append((frame, agent_id, agent_class, values, heading, row))

    records.sort(key=lambda r: (r[0], r[1]))

    states: dict[tuple[int, str], AgentState] = {}
    last_heading: dict[str, float] = {}
    for frame, agent_id, agent_class, values, heading, row in records:
        if (frame, agent_id) in states:
            raise ScenarioValidationError(
                f"duplicate row for agent '{agent_id}' at frame {frame}", path=path, row=row
            )
        velocity = (values["vx"], values["vy"])
        if heading is None:
            heading = derive_heading(velocity, last_heading.get(agent_id, 0.0), motion_threshold)
        last_heading[agent_id] = heading
        try:
            states[(frame, agent_id)] = AgentState(
                agent_id=agent_id,
                frame=frame,
                position=(values["x"], values["y"]),
                velocity=velocity,
                heading=heading,
                length=values["length"],
                width=values["width"],
                agent_class=agent_class,
            )
        except ValueError as exc:
            raise ScenarioValidationError(str(exc), path=path, row=row) from exc

    frames = tuple(sorted({frame for frame, _ in states}))
    scenario = Scenario(frames=frames, states=states, tick_seconds=tick_seconds)
    logger.info(
        "Loaded %s: %d frames, %d agents (%d vehicles)",
        path.name, len(frames), len(scenario.agent_ids), len(scenario.vehicle_ids),
    )
    return scenario


def write_trajectory(scenario: Scenario, path: str | Path) -> Path:
    """Write a Scenario's states in the canonical format (headings always written)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = [
        {
            "frame": s.frame,
            "agent_id": s.agent_id,
            "class": s.agent_class.value,
            "x": repr(s.position[0]),
            "y": repr(s.position[1]),
            "vx": repr(s.velocity[0]),
            "vy": repr(s.velocity[1]),
            "heading": repr(s.heading),
            "length": repr(s.length),
            "width": repr(s.width),
        }
        for _, s in sorted(scenario.states.items())
    ]
    pd.DataFrame(rows, columns=COLUMNS).to_csv(path, index=False, lineterminator="\n")
    return path


__all__ = ["parse_trajectory", "write_trajectory", "COLUMNS"]
