"""
API Endpoint Tests
==================

Test the FastAPI endpoints using the test client.

WHAT IS A TEST CLIENT?
---------------------
FastAPI provides a TestClient that lets you make HTTP requests
to your app WITHOUT actually starting a server. This means:
- Tests run fast
- No port conflicts
- Can test the full request/response cycle
"""

from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from occlusion_risk.api.dependencies import get_workflow
from occlusion_risk.api.main import app
from occlusion_risk.errors import InvariantViolation
from occlusion_risk.synthetic import occluding_truck


client = TestClient(app)


@pytest.fixture
def run_request(scene_files, tmp_path):
    """Request body for a baseline run over the occluding-truck scene."""
    trajectory, map_path = scene_files(occluding_truck(), name="truck")
    return {
        "scenario_path": str(trajectory),
        "map_path": str(map_path),
        "experiment": "baseline",
        "output_dir": str(tmp_path / "out"),
    }


class TestHealthEndpoint:
    def test_health_check(self):
        response = client.get("/api/v1/health")

        assert response.status_code == 200
        assert response.json() == {"status": "healthy", "version": "0.1.0"}


class TestRootEndpoint:
    def test_root_returns_welcome(self):
        response = client.get("/")

        assert response.status_code == 200
        data = response.json()
        assert data["message"] == "Occlusion Risk API"
        assert data["docs"] == "/docs"
        assert data["health"] == "/api/v1/health"


class TestRunEndpoint:
    """Tests for POST /api/v1/runs."""

    def test_baseline_run(self, run_request, tmp_path):
        response = client.post("/api/v1/runs", json=run_request)

        assert response.status_code == 200
        data = response.json()
        assert data["experiment"] == "baseline"
        assert data["output_dir"] == str(tmp_path / "out")
        assert Path(data["manifest_path"]).is_file()
        assert "rtl.csv" in data["files"]
        assert data["duration_seconds"] >= 0.0

    def test_missing_scenario_is_422(self, run_request, tmp_path):
        run_request["scenario_path"] = str(tmp_path / "absent.csv")

        response = client.post("/api/v1/runs", json=run_request)

        assert response.status_code == 422
        detail = response.json()["detail"]
        assert detail["error"] == "invalid_input"
        assert detail["details"]["path"] == str(tmp_path / "absent.csv")

    def test_rate_out_of_range_is_rejected(self, run_request):
        run_request["penetration_rates"] = [0.5, 1.5]

        response = client.post("/api/v1/runs", json=run_request)

        assert response.status_code == 422

    def test_library_failure_is_500(self, run_request):
        class FailingWorkflow:
            def invoke(self, state):
                raise InvariantViolation("dominance violated")

        app.dependency_overrides[get_workflow] = lambda: FailingWorkflow()
        try:
            response = client.post("/api/v1/runs", json=run_request)
        finally:
            app.dependency_overrides.clear()

        assert response.status_code == 500
        assert response.json()["detail"]["error"] == "InvariantViolation"
