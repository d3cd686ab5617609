"""Range-limited communication graph among the connected vehicles present at a frame."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from occlusion_risk.comms.connectivity import ConnectivityAssignment
from occlusion_risk.models.run_config import RiskConfig
from occlusion_risk.models.scene import Scenario


@dataclass(frozen=True, eq=False)
class CommGraph:
    """
    Nodes are connected vehicles present at ``frame``; an edge joins two of them when
    their distance is at most the communication range. Components are multi-hop groups.
    """

    frame: int
    graph: nx.Graph = field(default_factory=nx.Graph)

    @property
    def nodes(self) -> frozenset[str]:
        return frozenset(self.graph.nodes)

    @property
    def components(self) -> list[frozenset[str]]:
        return sorted((frozenset(c) for c in nx.connected_components(self.graph)), key=min)

    def component_of(self, agent_id: str) -> frozenset[str]:
        if agent_id not in self.graph:
            return frozenset()
        return frozenset(nx.node_connected_component(self.graph, agent_id))


def range_edges(positions: np.ndarray, comm_range: float) -> list[tuple[int, int]]:
    """Index pairs (a < b) of points within ``comm_range`` of each other."""
    if len(positions) < 2:
        return []
    delta = positions[:, None, :] - positions[None, :, :]
    within = np.hypot(delta[..., 0], delta[..., 1]) <= comm_range
    a, b = np.nonzero(np.triu(within, k=1))
    return list(zip(a.tolist(), b.tolist()))


def comm_graph(
    frame: int,
    scenario: Scenario,
    assignment: ConnectivityAssignment,
    config: RiskConfig,
) -> CommGraph:
    """
    Examples:
        A-B 150 m, B-C 150 m, A-C 300 m -> one component {A, B, C}
        two vehicles 250 m apart        -> two singleton components
    """
    members = [s for s in scenario.agents_at(frame) if s.agent_id in assignment.connected]
    graph = nx.Graph()
    graph.add_nodes_from(s.agent_id for s in members)
    positions = np.array([s.position for s in members], dtype=float).reshape(-1, 2)
    graph.add_edges_from(
        (members[a].agent_id, members[b].agent_id)
        for a, b in range_edges(positions, config.comm_range)
    )
    return CommGraph(frame=frame, graph=graph)


__all__ = ["CommGraph", "comm_graph", "range_edges"]
