"""
Risk Engine Tests
=================

Pair kinematics, reachable sets, the k hierarchy, instantaneous weights, event
segmentation and the RTL report, including the vectorized table path against the
per-pair path.
"""

import math

import numpy as np
import pytest

from occlusion_risk.models.run_config import FovMode, PairFilter, RiskConfig, RiskLevel
from occlusion_risk.models.scene import AgentClass, build_scenario
from occlusion_risk.perception.visibility import VisibilityModel, VisibilityRelation, fov_assignment
from occlusion_risk.risk import (
    PairKinematics,
    PairWeightTable,
    ReachableDisc,
    RiskReport,
    RiskSeries,
    agent_rtl,
    estimate_accelerations,
    evaluate_risk,
    event_integrals,
    instantaneous_weight,
    overlap_indicator,
    pair_F,
    pair_kinematics,
    reachable_region,
    risk_level,
    risk_level_counts,
    risk_series,
    select_k,
)
from occlusion_risk.risk.kinematics import is_side_on
from occlusion_risk.synthetic import car_following


def kinematics(*, d=10.0, delta_v=1.0, v_rel=-1.0, theta=0.0, i_side=False, i_over=False):
    return PairKinematics(d=d, delta_v=delta_v, v_rel=v_rel, theta=theta, i_side=i_side, i_over=i_over)


def runs_by_loop(values, tick):
    """Areas of the maximal positive runs, the slow way."""
    areas, current = [], None
    for value in values:
        if value > 0.0:
            current = (current or 0.0) + value
        elif current is not None:
            areas.append(current * tick * 1000.0)
            current = None
    if current is not None:
        areas.append(current * tick * 1000.0)
    return areas


class TestPairKinematics:
    """Tests for relative motion quantities."""

    def test_approaching_pair(self, make_agent, risk_config):
        i = make_agent("i", 0, 10.0, 0.0, -2.0, 0.0)
        j = make_agent("j", 0, 0.0, 0.0)

        kin = pair_kinematics(i, j, risk_config)

        assert kin.d == pytest.approx(10.0)
        assert kin.delta_v == pytest.approx(2.0)
        assert kin.v_rel == pytest.approx(-2.0)
        assert kin.theta == 0.0

    def test_separating_pair(self, make_agent, risk_config):
        kin = pair_kinematics(make_agent("i", 0, 10.0, 0.0, 3.0, 0.0), make_agent("j", 0, 0.0, 0.0, 1.0, 0.0), risk_config)

        assert kin.v_rel == pytest.approx(2.0)

    def test_perpendicular_is_side_on(self, make_agent, risk_config):
        kin = pair_kinematics(make_agent("i", 0, 0.0, 50.0, 5.0, 0.0), make_agent("j", 0, 0.0, 0.0, 0.0, 5.0), risk_config)

        assert kin.theta == pytest.approx(math.pi / 2.0)
        assert kin.i_side
        assert not kin.i_over

    def test_side_window_is_open(self):
        assert not is_side_on(math.radians(45.0))
        assert not is_side_on(math.radians(135.0))
        assert is_side_on(math.radians(90.0))
        assert not is_side_on(math.pi)

    def test_accelerations_from_velocity_history(self):
        scenario = car_following()

        accelerations = estimate_accelerations(scenario)

        assert accelerations[(10, "car_lead")][0] == pytest.approx(-0.5)
        assert accelerations[(10, "truck_mid")] == (0.0, 0.0)

    def test_single_appearance_has_zero_acceleration(self, make_agent):
        scenario = build_scenario([make_agent("a", 0, 0.0, 0.0, 5.0, 0.0), make_agent("b", 1, 0.0, 0.0)])

        assert estimate_accelerations(scenario)[(0, "a")] == (0.0, 0.0)


class TestReachableSets:
    """Tests for reachable regions and their overlap."""

    def test_stationary_pedestrian_disc(self, make_agent, risk_config):
        region = reachable_region(make_agent("p", 0, 3.0, 4.0, agent_class=AgentClass.PEDESTRIAN), risk_config)

        assert isinstance(region, ReachableDisc)
        assert region.radius == pytest.approx(1.0)
        assert tuple(region.center) == (3.0, 4.0)

    def test_walking_pedestrian_disc(self, make_agent, risk_config):
        region = reachable_region(make_agent("p", 0, 0.0, 0.0, 0.0, 1.4, agent_class=AgentClass.PEDESTRIAN), risk_config)

        assert region.radius == pytest.approx(1.4 * 0.6 + 1.0)

    def test_moving_car_hull(self, make_agent, risk_config):
        region = reachable_region(make_agent("c", 0, 0.0, 0.0, 10.0, 0.0), risk_config)
        xs, ys = region.vertices[:, 0], region.vertices[:, 1]

        assert xs.min() == pytest.approx(-3.25)
        assert xs.max() == pytest.approx(9.25)
        assert ys.min() == pytest.approx(-1.99)
        assert ys.max() == pytest.approx(1.99)

    def test_acceleration_extends_the_hull(self, make_agent, risk_config):
        car = make_agent("c", 0, 0.0, 0.0, 10.0, 0.0)

        braking = reachable_region(car, risk_config, (-5.0, 0.0))

        assert braking.vertices[:, 0].max() == pytest.approx(10.0 * 0.6 - 0.5 * 5.0 * 0.36 + 3.25)

    def test_touching_discs_overlap(self):
        a = ReachableDisc(center=np.array([0.0, 0.0]), radius=1.0)
        b = ReachableDisc(center=np.array([3.0, 0.0]), radius=2.0)

        assert overlap_indicator(a, b)

    def test_disc_and_polygon(self, make_agent, risk_config):
        car = reachable_region(make_agent("c", 0, 0.0, 0.0, 10.0, 0.0), risk_config)
        near = reachable_region(make_agent("p", 0, 10.0, 0.0, agent_class=AgentClass.PEDESTRIAN), risk_config)
        far = reachable_region(make_agent("q", 0, 10.0, 8.0, agent_class=AgentClass.PEDESTRIAN), risk_config)

        assert overlap_indicator(car, near)
        assert overlap_indicator(near, car)
        assert not overlap_indicator(car, far)

    def test_polygons(self, make_agent, risk_config):
        car = reachable_region(make_agent("c", 0, 0.0, 0.0, 10.0, 0.0), risk_config)
        beside = reachable_region(make_agent("d", 0, 0.0, 3.5, 10.0, 0.0), risk_config)
        apart = reachable_region(make_agent("e", 0, 0.0, 10.0, 10.0, 0.0), risk_config)

        assert overlap_indicator(car, beside)
        assert not overlap_indicator(car, apart)


class TestSelectK:
    """The two-stage coefficient hierarchy."""

    @pytest.mark.parametrize(
        "kin, speeds, expected",
        [
            (kinematics(v_rel=-1.0), (0.0, 5.0), 0.05),
            (kinematics(v_rel=1.0), (5.0, 0.0), 0.01),
            (kinematics(v_rel=-1.0, i_over=True), (0.05, 5.0), 0.05),
            (kinematics(i_over=True, i_side=True), (5.0, 5.0), 3.0),
            (kinematics(i_over=True, i_side=False), (5.0, 5.0), 1.0),
            (kinematics(v_rel=-1.0, i_side=True), (5.0, 5.0), 0.4),
            (kinematics(v_rel=-1.0, i_side=False), (5.0, 5.0), 0.2),
            (kinematics(v_rel=0.0, i_side=True), (5.0, 5.0), 0.01),
            (kinematics(v_rel=2.0), (5.0, 5.0), 0.01),
        ],
    )
    def test_branches(self, risk_config, kin, speeds, expected):
        assert select_k(kin, *speeds, risk_config) == expected

    MOVING = {
        (True, True, "approach"): 3.0,
        (True, True, "separate"): 3.0,
        (True, False, "approach"): 1.0,
        (True, False, "separate"): 1.0,
        (False, True, "approach"): 0.4,
        (False, True, "separate"): 0.01,
        (False, False, "approach"): 0.2,
        (False, False, "separate"): 0.01,
    }
    STATIC = {"approach": 0.05, "separate": 0.01}
    V_REL = {"approach": [-2.0, -0.1], "separate": [0.0, 1.5]}

    @pytest.mark.parametrize("i_over, i_side, motion", list(MOVING))
    def test_moving_table(self, risk_config, i_over, i_side, motion):
        for v_rel in self.V_REL[motion]:
            kin = kinematics(v_rel=v_rel, i_side=i_side, i_over=i_over)

            assert select_k(kin, 5.0, 5.0, risk_config) == self.MOVING[(i_over, i_side, motion)]

    @pytest.mark.parametrize("i_over, i_side, motion", list(MOVING))
    @pytest.mark.parametrize("speeds", [(0.0, 5.0), (5.0, 0.0), (0.05, 0.05)])
    def test_static_table(self, risk_config, i_over, i_side, motion, speeds):
        for v_rel in self.V_REL[motion]:
            kin = kinematics(v_rel=v_rel, i_side=i_side, i_over=i_over)

            assert select_k(kin, *speeds, risk_config) == self.STATIC[motion]


class TestInstantaneousWeight:
    def test_example(self, risk_config):
        assert instantaneous_weight(kinematics(d=10.0, delta_v=5.0), 3.0, risk_config) == pytest.approx(0.15)

    def test_clamped_to_one(self, risk_config):
        assert instantaneous_weight(kinematics(d=1.0, delta_v=10.0), 3.0, risk_config) == 1.0

    def test_no_relative_speed(self, risk_config):
        assert instantaneous_weight(kinematics(delta_v=0.0), 3.0, risk_config) == 0.0

    def test_distance_clamp(self, risk_config):
        assert instantaneous_weight(kinematics(d=0.01, delta_v=0.1), 0.01, risk_config) == pytest.approx(0.1)

    @pytest.mark.parametrize("k", [0.01, 0.05, 0.2, 0.4, 1.0, 3.0])
    def test_monotone_in_distance_and_speed(self, risk_config, k):
        distances = np.linspace(0.01, 60.0, 80)
        speeds = np.linspace(0.0, 25.0, 50)

        grid = np.array([
            [instantaneous_weight(kinematics(d=d, delta_v=dv), k, risk_config) for d in distances]
            for dv in speeds
        ])

        assert np.all((grid >= 0.0) & (grid <= 1.0))
        assert np.all(np.diff(grid, axis=1) <= 0.0)
        assert np.all(np.diff(grid, axis=0) >= 0.0)


class TestEvents:
    """Event segmentation and integration."""

    def test_example_series(self):
        series = RiskSeries(("i", "j"), tuple(range(8)), np.array([0, 0.5, 0.5, 0, 0.2, 0.2, 0.2, 0]), 0.1)

        events = event_integrals(series)

        assert [e.area_ms for e in events] == pytest.approx([100.0, 60.0])
        assert (events[0].start_frame, events[0].end_frame) == (1, 2)
        assert (events[1].start_frame, events[1].end_frame, events[1].peak_frame) == (4, 6, 4)
        assert pair_F(series) == pytest.approx(100.0)

    def test_all_zero(self):
        series = RiskSeries(("i", "j"), (0, 1, 2), np.zeros(3), 0.1)

        assert event_integrals(series) == []
        assert pair_F(series) == 0.0

    def test_run_to_the_end(self):
        series = RiskSeries(("i", "j"), (0, 1, 2), np.array([0.0, 1.0, 1.0]), 0.1)

        assert pair_F(series) == pytest.approx(200.0)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_loop(self, seed):
        rng = np.random.default_rng(seed)
        values = rng.uniform(0.0, 1.0, 60) * (rng.random(60) < 0.6)
        series = RiskSeries(("i", "j"), tuple(range(60)), values, 0.1)

        assert [e.area_ms for e in event_integrals(series)] == pytest.approx(runs_by_loop(values, 0.1))

    def test_matches_interval_enumeration(self):
        """Events are exactly the maximal all-positive intervals; F is the largest area."""
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            n = int(rng.integers(1, 17))
            values = rng.uniform(0.0, 1.0, n) * (rng.random(n) < 0.6)
            series = RiskSeries(("i", "j"), tuple(range(n)), values, 0.1)

            expected = []
            for a in range(n):
                for b in range(a, n):
                    inside = bool(np.all(values[a:b + 1] > 0.0))
                    left_closed = a == 0 or values[a - 1] == 0.0
                    right_closed = b == n - 1 or values[b + 1] == 0.0
                    if inside and left_closed and right_closed:
                        expected.append((a, b, sum(values[a:b + 1]) * 100.0))

            events = event_integrals(series)

            assert [(e.start_frame, e.end_frame) for e in events] == [(a, b) for a, b, _ in expected]
            assert [e.area_ms for e in events] == pytest.approx([area for _, _, area in expected])
            assert pair_F(series) == pytest.approx(max((area for _, _, area in expected), default=0.0))

    @pytest.mark.parametrize("seed", range(10))
    def test_agent_rtl_ignores_observer_order(self, seed):
        rng = np.random.default_rng(seed)
        frames = tuple(range(30))
        series = [
            RiskSeries(("i", f"o{k}"), frames, rng.uniform(0.0, 1.0, 30) * (rng.random(30) < 0.5), 0.1)
            for k in range(8)
        ]
        series.append(RiskSeries(("o0", "i"), frames, np.ones(30), 0.1))

        expected = agent_rtl("i", series)

        for _ in range(5):
            shuffled = [series[k] for k in rng.permutation(len(series))]
            assert agent_rtl("i", shuffled) == expected
        assert expected == max(pair_F(s) for s in series if s.pair[0] == "i")

    def test_agent_rtl_takes_the_worst_observer(self):
        frames = (0, 1, 2)
        series = [
            RiskSeries(("i", "a"), frames, np.array([0.1, 0.0, 0.0]), 0.1),
            RiskSeries(("i", "b"), frames, np.array([0.3, 0.3, 0.0]), 0.1),
            RiskSeries(("b", "i"), frames, np.array([1.0, 1.0, 1.0]), 0.1),
        ]

        assert agent_rtl("i", series) == pytest.approx(60.0)
        assert agent_rtl("z", series) == 0.0

    def test_risk_levels(self, risk_config):
        assert risk_level(49.9, risk_config) is RiskLevel.LOW
        assert risk_level(50.0, risk_config) is RiskLevel.MEDIUM
        assert risk_level(200.0, risk_config) is RiskLevel.MEDIUM
        assert risk_level(200.1, risk_config) is RiskLevel.HIGH

    def test_level_counts(self, risk_config):
        report = RiskReport(rtl={"a": 10.0, "b": 100.0, "c": 300.0, "d": 0.0}, pair_F={}, events={})

        assert risk_level_counts(report, risk_config) == {RiskLevel.LOW: 2, RiskLevel.MEDIUM: 1, RiskLevel.HIGH: 1}


class TestRiskReport:
    """RTL over whole scenarios."""

    @pytest.fixture
    def facing_pair(self, make_agent):
        """A stationary car and a car creeping towards it, 1 m apart, for four frames."""
        states = []
        for frame in range(4):
            states.append(make_agent("i", frame, 0.0, 0.0))
            states.append(make_agent("j", frame, 1.0, 0.0, -1.0, 0.0, heading=math.pi))
        return build_scenario(states)

    def test_two_frame_occlusion(self, facing_pair):
        config = RiskConfig(k_static_approach=0.5)
        relations = {frame: VisibilityRelation(frame) for frame in range(4)}
        relations[2] = VisibilityRelation(2, frozenset({("j", "i")}))
        relations[3] = VisibilityRelation(3, frozenset({("j", "i")}))

        report = evaluate_risk(PairWeightTable(facing_pair, config), relations)

        assert report.rtl["i"] == pytest.approx(100.0)
        assert report.rtl["j"] == pytest.approx(200.0)
        assert report.pair_F[("i", "j")] == pytest.approx(100.0)
        assert [e.peak_value for e in report.events[("j", "i")]] == pytest.approx([0.5])

    def test_absence_splits_events(self, make_agent):
        config = RiskConfig(k_static_approach=0.5)
        states = [make_agent("j", frame, 1.0, 0.0, -1.0, 0.0) for frame in range(4)]
        states += [make_agent("i", frame, 0.0, 0.0) for frame in (0, 1, 3)]
        scenario = build_scenario(states)

        report = evaluate_risk(PairWeightTable(scenario, config), {})

        assert [e.area_ms for e in report.events[("i", "j")]] == pytest.approx([100.0, 50.0])
        assert report.rtl["i"] == pytest.approx(100.0)

    def test_everyone_sees_everyone(self, facing_pair, risk_config):
        relations = {frame: VisibilityRelation(frame, frozenset({("i", "j"), ("j", "i")})) for frame in range(4)}

        report = evaluate_risk(PairWeightTable(facing_pair, risk_config), relations)

        assert report.rtl == {"i": 0.0, "j": 0.0}
        assert report.events == {}

    def test_vehicle_filter_reports_vehicles_only(self, make_agent, risk_config):
        scenario = build_scenario([
            make_agent("car", 0, 0.0, 0.0, 5.0, 0.0),
            make_agent("ped", 0, 5.0, 1.0, agent_class=AgentClass.PEDESTRIAN),
        ])

        vehicles = evaluate_risk(PairWeightTable(scenario, risk_config, PairFilter.VEH_VEH), {})
        mixed = evaluate_risk(PairWeightTable(scenario, risk_config, PairFilter.VEH_VRU), {})

        assert vehicles.rtl == {"car": 0.0}
        assert set(mixed.rtl) == {"car", "ped"}
        assert mixed.rtl["ped"] > 0.0

    def test_metadata_carries_the_config_hash(self, facing_pair, risk_config):
        report = evaluate_risk(PairWeightTable(facing_pair, risk_config), {})

        assert report.metadata.config_hash == risk_config.fingerprint()

    @pytest.mark.parametrize("seed", range(6))
    def test_table_matches_per_pair_series(self, make_random_scene, risk_config, seed):
        scenario = make_random_scene(seed)
        relations = VisibilityModel(scenario, risk_config).relations(
            fov_assignment(scenario, FovMode.ALL_120, risk_config)
        )
        table = PairWeightTable(scenario, risk_config)
        accelerations = estimate_accelerations(scenario)

        report = evaluate_risk(table, relations)

        all_series = [risk_series(i, j, scenario, relations, risk_config, accelerations) for i, j in table.pairs]
        for series in all_series:
            expected = event_integrals(series)
            got = report.events.get(series.pair, [])
            assert report.pair_F[series.pair] == pytest.approx(pair_F(expected), abs=1e-9)
            assert [(e.start_frame, e.end_frame, e.peak_frame) for e in got] == [
                (e.start_frame, e.end_frame, e.peak_frame) for e in expected
            ]
        for agent_id, value in report.rtl.items():
            assert value == pytest.approx(agent_rtl(agent_id, all_series), abs=1e-9)

    @pytest.mark.parametrize("seed", range(5))
    def test_more_visibility_never_raises_rtl(self, make_random_scene, risk_config, seed):
        scenario = make_random_scene(seed)
        model = VisibilityModel(scenario, risk_config)
        table = PairWeightTable(scenario, risk_config)

        narrow = evaluate_risk(table, model.relations(fov_assignment(scenario, FovMode.ALL_120, risk_config)))
        wide = evaluate_risk(table, model.relations(fov_assignment(scenario, FovMode.HOMOGENEOUS_360, risk_config)))

        for agent_id in narrow.rtl:
            assert wide.rtl[agent_id] <= narrow.rtl[agent_id] + 1e-9
