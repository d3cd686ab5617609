"""Command-line entry point tests."""

import json

import pytest

from occlusion_risk.cli import EXIT_INPUT, EXIT_OK, build_parser, main


@pytest.fixture
def plan_file(tmp_path):
    """Write a synthetic crossing scene and a baseline plan naming it by relative path."""
    assert main(["synth", "crossing", "--out", str(tmp_path)]) == EXIT_OK
    plan = tmp_path / "plan.json"
    plan.write_text(
        json.dumps({
            "scenario_path": "crossing.csv",
            "map_path": "crossing_map.json",
            "experiment": "baseline",
            "output_dir": "out",
        }),
        encoding="utf-8",
    )
    return plan


class TestSynth:
    def test_writes_trajectory_and_map(self, tmp_path, capsys):
        code = main(["synth", "occluding_truck", "--out", str(tmp_path)])

        assert code == EXIT_OK
        assert (tmp_path / "occluding_truck.csv").is_file()
        assert (tmp_path / "occluding_truck_map.json").is_file()
        assert str(tmp_path / "occluding_truck.csv") in capsys.readouterr().out

    def test_seeded_intersection_is_reproducible(self, tmp_path):
        main(["synth", "dense_intersection", "--out", str(tmp_path / "a"), "--seed", "3"])
        main(["synth", "dense_intersection", "--out", str(tmp_path / "b"), "--seed", "3"])

        first = (tmp_path / "a" / "dense_intersection.csv").read_bytes()
        assert first == (tmp_path / "b" / "dense_intersection.csv").read_bytes()

    def test_unknown_kind_is_a_usage_error(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["synth", "roundabout"])


class TestRun:
    def test_run_prints_the_manifest(self, plan_file, tmp_path, capsys):
        capsys.readouterr()

        code = main(["run", str(plan_file)])

        assert code == EXIT_OK
        manifest = tmp_path / "out" / "manifest.json"
        assert manifest.is_file()
        assert capsys.readouterr().out.strip() == str(manifest)

    def test_flags_override_the_plan(self, plan_file, tmp_path):
        code = main(["run", str(plan_file), "--out", str(tmp_path / "flagged"), "--fov-mode", "all_120"])

        assert code == EXIT_OK
        manifest = json.loads((tmp_path / "flagged" / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["run_config"]["fov_mode"] == "all_120"

    def test_missing_map_is_exit_1(self, plan_file, tmp_path):
        (tmp_path / "crossing_map.json").unlink()

        assert main(["run", str(plan_file)]) == EXIT_INPUT

    def test_missing_plan_is_exit_1(self, tmp_path):
        assert main(["run", str(tmp_path / "nothing.json")]) == EXIT_INPUT

    def test_bad_rate_flag_is_exit_1(self, plan_file):
        assert main(["run", str(plan_file), "--penetration", "0.5", "2"]) == EXIT_INPUT
