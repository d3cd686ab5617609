"""
Perception Fusion
=================

Turns raw per-observer visibility into the effective visibility of a communication
paradigm.

SYMMETRIC:
    Every connected vehicle sees whatever any member of its multi-hop component sees.
    Everyone else keeps the raw view.

ASYMMETRIC:
    Symmetric fusion first. Then each non-connected vehicle within direct range of at
    least one connected vehicle b also sees b's component-fused view. Receivers never
    relay, and VRUs receive nothing.

Both are monotone (raw is a subset of symmetric, which is a subset of asymmetric) and
idempotent. An observer never "sees" itself, whatever its partners report about it.

Two implementations: relation-level (sets of pairs, used by the public ops) and
matrix-level (``fuse_matrix``, used by the experiment runners on FrameGeometry matrices).
"""

from __future__ import annotations

import logging

import networkx as nx
import numpy as np

from occlusion_risk.comms.connectivity import ConnectivityAssignment
from occlusion_risk.comms.graph import CommGraph
from occlusion_risk.models.run_config import Paradigm, RiskConfig
from occlusion_risk.models.scene import Scenario
from occlusion_risk.perception.visibility import VisibilityRelation

logger = logging.getLogger(__name__)


def _without_self(pairs: set[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    return frozenset((o, t) for o, t in pairs if o != t)


def fuse_symmetric(raw: VisibilityRelation, graph: CommGraph) -> VisibilityRelation:
    """
    Examples:
        component {A, B}, raw A sees X      -> A and B see X
        empty graph                         -> raw unchanged
    """
    sees = set(raw.sees)
    for component in graph.components:
        shared = {t for o, t in raw.sees if o in component}
        sees.update((member, t) for member in component for t in shared)
    return VisibilityRelation(frame=raw.frame, sees=_without_self(sees))


def fuse_asymmetric(
    raw: VisibilityRelation,
    graph: CommGraph,
    scenario: Scenario,
    assignment: ConnectivityAssignment,
    config: RiskConfig,
) -> VisibilityRelation:
    """
    Symmetric fusion plus single-hop reception by non-connected vehicles.

    Example:
        D 100 m from connected A in component {A, B} -> D gains everything {A, B} see
    """
    fused = fuse_symmetric(raw, graph)
    frame = raw.frame
    broadcasters = [s for s in scenario.agents_at(frame) if s.agent_id in graph.nodes]
    if not broadcasters:
        return fused

    sees = set(fused.sees)
    for receiver in scenario.agents_at(frame):
        if not receiver.is_vehicle or receiver.agent_id in assignment.connected:
            continue
        for b in broadcasters:
            gap = np.hypot(receiver.position[0] - b.position[0], receiver.position[1] - b.position[1])
            if gap <= config.comm_range:
                sees.update((receiver.agent_id, t) for t in fused.observed_by(b.agent_id))
    return VisibilityRelation(frame=frame, sees=_without_self(sees))


def fuse(
    raw: VisibilityRelation,
    paradigm: Paradigm,
    graph: CommGraph,
    scenario: Scenario,
    assignment: ConnectivityAssignment,
    config: RiskConfig,
) -> VisibilityRelation:
    if paradigm is Paradigm.SYMMETRIC:
        return fuse_symmetric(raw, graph)
    if paradigm is Paradigm.ASYMMETRIC:
        return fuse_asymmetric(raw, graph, scenario, assignment, config)
    return raw


# ═══════════════════════════════════════════════════════════════════════════
# Matrix form
# ═══════════════════════════════════════════════════════════════════════════

def component_labels(connected: np.ndarray, distance: np.ndarray, comm_range: float) -> np.ndarray:
    """Component label per agent (-1 for agents that are not connected)."""
    labels = np.full(len(connected), -1, dtype=np.int64)
    members = np.flatnonzero(connected)
    if len(members) == 0:
        return labels
    graph = nx.Graph()
    graph.add_nodes_from(members.tolist())
    sub = distance[np.ix_(members, members)] <= comm_range
    a, b = np.nonzero(np.triu(sub, k=1))
    graph.add_edges_from(zip(members[a].tolist(), members[b].tolist()))
    for label, component in enumerate(sorted(nx.connected_components(graph), key=min)):
        labels[list(component)] = label
    return labels


def fuse_matrix(
    sees: np.ndarray,
    paradigm: Paradigm,
    connected: np.ndarray,
    is_vehicle: np.ndarray,
    distance: np.ndarray,
    comm_range: float,
) -> np.ndarray:
    """
    Fused (n, n) sight matrix, rows = observers.

    ``connected`` and ``is_vehicle`` are boolean masks over the same agent order as
    ``sees`` and ``distance``.
    """
    if paradigm is Paradigm.NONE or not connected.any():
        return sees
    labels = component_labels(connected, distance, comm_range)
    fused = sees.copy()
    for label in range(labels.max() + 1):
        rows = labels == label
        fused[rows] = sees[rows].any(axis=0)
    np.fill_diagonal(fused, False)

    if paradigm is Paradigm.ASYMMETRIC:
        receivers = is_vehicle & ~connected
        link = (distance <= comm_range) & receivers[:, None] & connected[None, :]
        if link.any():
            received = (link.astype(np.int32) @ fused.astype(np.int32)) > 0
            fused = fused | received
            np.fill_diagonal(fused, False)

    logger.debug("%s fusion: %d -> %d sight pairs", paradigm.value, int(sees.sum()), int(fused.sum()))
    return fused


__all__ = [
    "component_labels",
    "fuse",
    "fuse_asymmetric",
    "fuse_matrix",
    "fuse_symmetric",
]
