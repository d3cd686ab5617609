"""Test fixtures and configurations."""

import math

import numpy as np
import pytest

from occlusion_risk.ingest import write_map, write_trajectory
from occlusion_risk.models.run_config import RiskConfig
from occlusion_risk.models.scene import AgentClass, AgentState, OccluderPolygon, build_scenario
from occlusion_risk.synthetic.generators import FOOTPRINT


def agent(
    agent_id: str,
    frame: int,
    x: float,
    y: float,
    vx: float = 0.0,
    vy: float = 0.0,
    *,
    heading: float | None = None,
    agent_class: AgentClass = AgentClass.CAR,
) -> AgentState:
    """An AgentState with the class's default footprint; heading follows velocity unless given."""
    length, width = FOOTPRINT[agent_class]
    if heading is None:
        heading = math.atan2(vy, vx) if (vx, vy) != (0.0, 0.0) else 0.0
    return AgentState(
        agent_id=agent_id,
        frame=frame,
        position=(x, y),
        velocity=(vx, vy),
        heading=heading,
        length=length,
        width=width,
        agent_class=agent_class,
    )


def random_scene(seed: int, n_agents: int = 6, n_frames: int = 12, *, gaps: bool = True, occluder: bool = True):
    """Seeded random scene: cars, trucks and pedestrians on straight lines, some frames missing."""
    rng = np.random.default_rng(seed)
    classes = [AgentClass.CAR, AgentClass.TRUCK, AgentClass.PEDESTRIAN]
    states = []
    for k in range(n_agents):
        agent_class = classes[k % 3]
        start = rng.uniform(-30.0, 30.0, 2)
        velocity = rng.uniform(-6.0, 6.0, 2) * (0.3 if agent_class is AgentClass.PEDESTRIAN else 1.0)
        for frame in range(n_frames):
            if gaps and rng.random() < 0.15:
                continue
            x, y = start + velocity * frame * 0.1
            states.append(
                agent(f"a{k}", frame, float(x), float(y), float(velocity[0]), float(velocity[1]), agent_class=agent_class)
            )
    polygons = [OccluderPolygon(name="block", vertices=((5.0, 5.0), (15.0, 5.0), (15.0, 15.0), (5.0, 15.0)))]
    return build_scenario(states, polygons if occluder else [])


@pytest.fixture
def make_agent():
    """Factory for single AgentStates."""
    return agent


@pytest.fixture
def make_random_scene():
    """Factory for seeded random scenes."""
    return random_scene


@pytest.fixture
def risk_config():
    """Default risk coefficients."""
    return RiskConfig()


@pytest.fixture
def chain_scene():
    """Three cars in a row 10 m apart; the middle one hides the outer two from each other."""
    return build_scenario([agent("A", 0, 0.0, 0.0), agent("B", 0, 10.0, 0.0), agent("C", 0, 20.0, 0.0)])


@pytest.fixture
def scene_files(tmp_path):
    """Factory writing a scenario's trajectory CSV and map JSON into tmp_path."""

    def write(scenario, name="scene"):
        trajectory = write_trajectory(scenario, tmp_path / f"{name}.csv")
        map_path = write_map(scenario.occluders, tmp_path / f"{name}_map.json")
        return trajectory, map_path

    return write
