"""
Error Types
===========

Every failure raised by this package derives from ``OcclusionRiskError`` so the CLI and
the HTTP service can map errors to exit codes / status codes in one place:

    InputError            -> exit 1 / HTTP 422
    InvariantViolation    -> exit 2 / HTTP 500
    anything else         -> exit 2 / HTTP 500
"""

from __future__ import annotations

from pathlib import Path


class OcclusionRiskError(Exception):
    """Base class for all library errors."""


class InputError(OcclusionRiskError):
    """
    A trajectory, map, config or plan file could not be used.

    Carries optional file/row/column context so messages can point at the
    offending cell, e.g. ``trajectories.csv: row 12, column 'vx': not a finite number``.
    """

    def __init__(
        self,
        message: str,
        *,
        path: str | Path | None = None,
        row: int | None = None,
        column: str | None = None,
    ) -> None:
        self.path = str(path) if path is not None else None
        self.row = row
        self.column = column
        self.reason = message
        super().__init__(self._render())

    def _render(self) -> str:
        where = []
        if self.path:
            where.append(self.path)
        if self.row is not None:
            where.append(f"row {self.row}")
        if self.column is not None:
            where.append(f"column '{self.column}'")
        return f"{', '.join(where)}: {self.reason}" if where else self.reason

    def details(self) -> dict:
        return {"path": self.path, "row": self.row, "column": self.column}


class ScenarioValidationError(InputError):
    """Parsed data violates a domain invariant (class constancy, frame order, polygon shape)."""


class AgentNotPresentError(OcclusionRiskError):
    """An operation asked for an agent at a frame where it does not appear."""

    def __init__(self, agent_id: str, frame: int) -> None:
        self.agent_id = agent_id
        self.frame = frame
        super().__init__(f"agent '{agent_id}' is not present at frame {frame}")


class InvariantViolation(OcclusionRiskError):
    """An internal consistency check failed (e.g. fused visibility lost a raw pair)."""


class StatisticsError(OcclusionRiskError):
    """A statistic was requested on an empty sample."""


__all__ = [
    "OcclusionRiskError",
    "InputError",
    "ScenarioValidationError",
    "AgentNotPresentError",
    "InvariantViolation",
    "StatisticsError",
]
