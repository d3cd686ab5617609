"""
Connectivity Sampling
=====================

Which vehicles carry V2X hardware in a run. The assignment is drawn once per
(penetration, seed) and stays fixed for every frame of the scenario.

HOW IT WORKS:
-------------
The sorted vehicle ids are shuffled once with ``numpy.random.default_rng(seed)`` and the
first round-half-up(p * V) of them are connected. Because every penetration rate takes a
prefix of the same permutation, assignments for one seed are nested:

    connected(0.25) subset of connected(0.5) subset of connected(0.75) ...
"""

from __future__ import annotations

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from occlusion_risk.models.scene import Scenario

logger = logging.getLogger(__name__)


class ConnectivityAssignment(BaseModel):
    """The set of connected vehicles for one run."""

    model_config = ConfigDict(frozen=True)

    connected: frozenset[str] = Field(default_factory=frozenset)
    penetration: float = Field(default=0.0, ge=0.0, le=1.0)
    seed: int | None = None

    def __contains__(self, agent_id: str) -> bool:
        return agent_id in self.connected

    def __len__(self) -> int:
        return len(self.connected)


def connected_count(penetration: float, vehicle_count: int) -> int:
    """round-half-up(p * V)"""
    return min(vehicle_count, math.floor(penetration * vehicle_count + 0.5))


def sample_connected(scenario: Scenario, penetration: float, seed: int) -> ConnectivityAssignment:
    """
    Uniform sample without replacement of round(p * V) vehicles.

    Examples:
        p 0 -> empty set
        p 1 -> every vehicle
    """
    if not 0.0 <= penetration <= 1.0:
        raise ValueError(f"penetration {penetration} outside [0, 1]")
    vehicles = scenario.vehicle_ids
    count = connected_count(penetration, len(vehicles))
    order = np.random.default_rng(seed).permutation(len(vehicles))
    connected = frozenset(vehicles[k] for k in order[:count])
    logger.debug("p=%.2f seed=%d: %d of %d vehicles connected", penetration, seed, count, len(vehicles))
    return ConnectivityAssignment(connected=connected, penetration=penetration, seed=seed)


def assignment_rows(assignment: ConnectivityAssignment, scenario: Scenario) -> list[dict[str, object]]:
    """Rows ``agent_id,connected`` for every agent of the scenario (1/0)."""
    return [
        {"agent_id": agent_id, "connected": int(agent_id in assignment.connected)}
        for agent_id in scenario.agent_ids
    ]


__all__ = [
    "ConnectivityAssignment",
    "assignment_rows",
    "connected_count",
    "sample_connected",
]
