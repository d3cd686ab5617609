"""
V2X Simulation Tests
====================

Connectivity sampling, the range-limited communication graph and the two fusion
paradigms (relation form against matrix form).
"""

import numpy as np
import pytest

from occlusion_risk.comms import (
    ConnectivityAssignment,
    assignment_rows,
    comm_graph,
    fuse,
    fuse_asymmetric,
    fuse_matrix,
    fuse_symmetric,
    sample_connected,
)
from occlusion_risk.comms.connectivity import connected_count
from occlusion_risk.models.run_config import FovMode, Paradigm, RiskConfig
from occlusion_risk.models.scene import AgentClass, build_scenario
from occlusion_risk.perception.visibility import VisibilityModel, VisibilityRelation, fov_assignment
from occlusion_risk.synthetic import dense_intersection


@pytest.fixture
def fusion_scene(make_agent):
    """Connected A and B 50 m apart, a pedestrian X near A, non-connected D 100 m from A."""
    return build_scenario([
        make_agent("A", 0, 0.0, 0.0),
        make_agent("B", 0, 50.0, 0.0),
        make_agent("D", 0, 100.0, 0.0),
        make_agent("X", 0, 10.0, 10.0, agent_class=AgentClass.PEDESTRIAN),
    ])


class TestSampling:
    """Tests for connectivity assignment."""

    def test_extremes(self):
        scenario = dense_intersection(n_vehicles=16, n_vru=4, frames=5)

        assert sample_connected(scenario, 0.0, 3).connected == frozenset()
        assert sample_connected(scenario, 1.0, 3).connected == frozenset(scenario.vehicle_ids)

    def test_rounding(self, chain_scene):
        assert len(sample_connected(chain_scene, 0.5, 0)) == 2
        assert connected_count(0.5, 3) == 2
        assert connected_count(0.25, 10) == 3
        assert connected_count(0.1, 4) == 0

    def test_only_vehicles_are_connected(self):
        scenario = dense_intersection(n_vehicles=16, n_vru=4, frames=5)

        assignment = sample_connected(scenario, 1.0, 0)

        assert not assignment.connected & set(scenario.vru_ids)

    def test_deterministic(self):
        scenario = dense_intersection(n_vehicles=16, n_vru=4, frames=5)

        assert sample_connected(scenario, 0.5, 9) == sample_connected(scenario, 0.5, 9)

    @pytest.mark.parametrize("seed", range(10))
    def test_nested_across_rates(self, seed):
        scenario = dense_intersection(n_vehicles=16, n_vru=4, frames=5)
        rates = [0.0, 0.25, 0.5, 0.75, 0.9, 1.0]

        sets = [sample_connected(scenario, p, seed).connected for p in rates]

        assert all(a <= b for a, b in zip(sets, sets[1:]))

    @pytest.mark.parametrize("p", [-0.1, 1.5])
    def test_rejects_rates_outside_unit_interval(self, chain_scene, p):
        with pytest.raises(ValueError):
            sample_connected(chain_scene, p, 0)

    def test_assignment_rows(self, fusion_scene):
        rows = assignment_rows(ConnectivityAssignment(connected=frozenset({"B"})), fusion_scene)

        assert rows == [
            {"agent_id": "A", "connected": 0},
            {"agent_id": "B", "connected": 1},
            {"agent_id": "D", "connected": 0},
            {"agent_id": "X", "connected": 0},
        ]


class TestCommGraph:
    """Tests for the range-limited communication graph."""

    def test_multi_hop_component(self, make_agent, risk_config):
        scenario = build_scenario([
            make_agent("A", 0, 0.0, 0.0),
            make_agent("B", 0, 150.0, 0.0),
            make_agent("C", 0, 300.0, 0.0),
        ])
        assignment = ConnectivityAssignment(connected=frozenset({"A", "B", "C"}))

        graph = comm_graph(0, scenario, assignment, risk_config)

        assert graph.components == [frozenset({"A", "B", "C"})]
        assert graph.component_of("C") == frozenset({"A", "B", "C"})

    def test_out_of_range(self, make_agent, risk_config):
        scenario = build_scenario([make_agent("A", 0, 0.0, 0.0), make_agent("B", 0, 250.0, 0.0)])
        assignment = ConnectivityAssignment(connected=frozenset({"A", "B"}))

        graph = comm_graph(0, scenario, assignment, risk_config)

        assert graph.components == [frozenset({"A"}), frozenset({"B"})]

    def test_only_connected_and_present(self, make_agent, risk_config):
        scenario = build_scenario([
            make_agent("A", 0, 0.0, 0.0),
            make_agent("B", 0, 10.0, 0.0),
            make_agent("C", 1, 20.0, 0.0),
        ])
        assignment = ConnectivityAssignment(connected=frozenset({"A", "C"}))

        graph = comm_graph(0, scenario, assignment, risk_config)

        assert graph.nodes == frozenset({"A"})
        assert graph.component_of("B") == frozenset()


class TestFusion:
    """Tests for symmetric and asymmetric perception sharing."""

    @pytest.fixture
    def connected_ab(self):
        return ConnectivityAssignment(connected=frozenset({"A", "B"}), penetration=0.67)

    def test_symmetric_shares_within_component(self, fusion_scene, connected_ab, risk_config):
        raw = VisibilityRelation(0, frozenset({("A", "X")}))
        graph = comm_graph(0, fusion_scene, connected_ab, risk_config)

        fused = fuse_symmetric(raw, graph)

        assert fused.sees == frozenset({("A", "X"), ("B", "X")})

    def test_asymmetric_reaches_non_connected_vehicles(self, fusion_scene, connected_ab, risk_config):
        raw = VisibilityRelation(0, frozenset({("A", "X")}))
        graph = comm_graph(0, fusion_scene, connected_ab, risk_config)

        fused = fuse_asymmetric(raw, graph, fusion_scene, connected_ab, risk_config)

        assert fused.sees == frozenset({("A", "X"), ("B", "X"), ("D", "X")})

    def test_receivers_do_not_relay(self, make_agent, risk_config):
        scenario = build_scenario([
            make_agent("A", 0, 0.0, 0.0),
            make_agent("D", 0, 150.0, 0.0),
            make_agent("E", 0, 300.0, 0.0),
        ])
        assignment = ConnectivityAssignment(connected=frozenset({"A"}))
        raw = VisibilityRelation(0, frozenset({("A", "D"), ("D", "E")}))
        graph = comm_graph(0, scenario, assignment, risk_config)

        fused = fuse_asymmetric(raw, graph, scenario, assignment, risk_config)

        assert ("E", "D") not in fused
        assert ("D", "E") in fused

    def test_nobody_sees_itself(self, fusion_scene, connected_ab, risk_config):
        raw = VisibilityRelation(0, frozenset({("A", "B")}))
        graph = comm_graph(0, fusion_scene, connected_ab, risk_config)

        assert fuse_symmetric(raw, graph).sees == frozenset({("A", "B")})
        assert ("D", "B") in fuse_asymmetric(raw, graph, fusion_scene, connected_ab, risk_config)

    def test_no_connectivity_is_identity(self, fusion_scene, risk_config):
        raw = VisibilityRelation(0, frozenset({("A", "X"), ("D", "B")}))
        nobody = ConnectivityAssignment()
        graph = comm_graph(0, fusion_scene, nobody, risk_config)

        for paradigm in Paradigm:
            assert fuse(raw, paradigm, graph, fusion_scene, nobody, risk_config).sees == raw.sees

    @pytest.mark.parametrize("seed", range(6))
    def test_monotone_and_idempotent(self, seed, risk_config):
        scenario = dense_intersection(seed=seed, n_vehicles=16, n_vru=4, frames=6)
        assignment = sample_connected(scenario, 0.5, seed)
        model = VisibilityModel(scenario, risk_config)
        fovs = fov_assignment(scenario, FovMode.HETEROGENEOUS_120_360, risk_config, assignment.connected)

        for frame in scenario.frames:
            raw = model.relation(frame, fovs)
            graph = comm_graph(frame, scenario, assignment, risk_config)
            sym = fuse_symmetric(raw, graph)
            asym = fuse_asymmetric(raw, graph, scenario, assignment, risk_config)

            assert raw.issubset(sym)
            assert sym.issubset(asym)
            assert fuse_symmetric(sym, graph).sees == sym.sees
            assert fuse_asymmetric(asym, graph, scenario, assignment, risk_config).sees == asym.sees

    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("paradigm", [Paradigm.SYMMETRIC, Paradigm.ASYMMETRIC])
    def test_matrix_form_matches_relation_form(self, make_random_scene, seed, paradigm):
        config = RiskConfig(comm_range=25.0)
        scenario = make_random_scene(seed, n_agents=9)
        assignment = sample_connected(scenario, 0.5, seed)
        model = VisibilityModel(scenario, config)
        fovs = fov_assignment(scenario, FovMode.HETEROGENEOUS_120_360, config, assignment.connected)

        for frame in scenario.frames:
            geometry = model.geometry(frame)
            ids = geometry.ids
            sees = geometry.sees_matrix(np.array([fovs[a] for a in ids]))
            connected = np.array([a in assignment.connected for a in ids], dtype=bool)
            is_vehicle = np.array([scenario.agent_class(a).is_vehicle for a in ids], dtype=bool)

            fused = fuse_matrix(sees, paradigm, connected, is_vehicle, geometry.distance, config.comm_range)
            graph = comm_graph(frame, scenario, assignment, config)
            expected = fuse(geometry.relation(fovs), paradigm, graph, scenario, assignment, config)

            obs, tgt = np.nonzero(fused)
            assert {(ids[o], ids[t]) for o, t in zip(obs, tgt)} == set(expected.sees)
