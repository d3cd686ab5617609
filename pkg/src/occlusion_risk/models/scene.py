"""
Scene Model
===========

The core domain types every other module works on:

    AgentClass   - vehicle (car | truck | bus) or VRU (pedestrian | bicycle | motorcycle | tricycle)
    AgentState   - one agent at one frame (position, velocity, heading, footprint, class)
    OccluderPolygon - one non-road region that blocks line of sight
    Scenario     - frame-indexed AgentStates plus the static occluder map

All types are frozen pydantic models. Distances are meters, velocities m/s,
headings radians, time seconds (``tick_seconds`` per frame, 10 Hz by default).

HOW IT WORKS:
-------------
``Scenario`` validates its invariants on construction (strictly increasing frames,
states only at known frames, one class per agent) and then builds read-only indexes
by frame and by agent, so lookups in the hot loops are dictionary hits.
"""

from __future__ import annotations

import math
from enum import StrEnum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from occlusion_risk.errors import AgentNotPresentError

Point = tuple[float, float]
Vector = tuple[float, float]
PairType = Literal["veh_veh", "veh_vru"]

DEFAULT_TICK_SECONDS = 0.1


class AgentClass(StrEnum):
    """Traffic participant class; the label strings are the trajectory-file labels."""

    CAR = "car"
    TRUCK = "truck"
    BUS = "bus"
    PEDESTRIAN = "pedestrian"
    BICYCLE = "bicycle"
    MOTORCYCLE = "motorcycle"
    TRICYCLE = "tricycle"

    @property
    def is_vehicle(self) -> bool:
        return self in _VEHICLE_CLASSES

    @property
    def is_vru(self) -> bool:
        return not self.is_vehicle


_VEHICLE_CLASSES = frozenset({AgentClass.CAR, AgentClass.TRUCK, AgentClass.BUS})


def derive_heading(velocity: Vector, fallback: float, motion_threshold: float) -> float:
    """
    Heading of an agent from its velocity.

    Returns ``atan2(vy, vx)`` when the speed exceeds ``motion_threshold``, otherwise
    ``fallback`` (the agent's previous known heading, or 0 for a first appearance).

    Example:
        >>> derive_heading((1.0, 1.0), 0.0, 0.05)
        0.7853981633974483
    """
    vx, vy = velocity
    if math.hypot(vx, vy) > motion_threshold:
        return math.atan2(vy, vx)
    return fallback


def pair_type(class_a: AgentClass, class_b: AgentClass) -> PairType | None:
    """Interaction pair type; VRU-VRU pairs are not analysed and give None."""
    if class_a.is_vehicle and class_b.is_vehicle:
        return "veh_veh"
    if class_a.is_vehicle != class_b.is_vehicle:
        return "veh_vru"
    return None


class AgentState(BaseModel):
    """
    One agent at one frame.

    Example:
        AgentState(agent_id="7", frame=12, position=(3.0, 4.5), velocity=(8.0, 0.0),
                   heading=0.0, length=4.6, width=1.9, agent_class=AgentClass.CAR)
    """

    model_config = ConfigDict(frozen=True)

    agent_id: str
    frame: int
    position: Point
    velocity: Vector
    heading: float = 0.0
    length: float = Field(ge=0.0)
    width: float = Field(ge=0.0)
    agent_class: AgentClass

    @model_validator(mode="after")
    def _check_footprint(self) -> "AgentState":
        values = (*self.position, *self.velocity, self.heading, self.length, self.width)
        if not all(math.isfinite(v) for v in values):
            raise ValueError(f"agent {self.agent_id} at frame {self.frame}: non-finite value")
        if self.agent_class.is_vehicle and (self.length <= 0.0 or self.width <= 0.0):
            raise ValueError(
                f"vehicle {self.agent_id} at frame {self.frame} needs length > 0 and width > 0"
            )
        return self

    @property
    def speed(self) -> float:
        return math.hypot(*self.velocity)

    @property
    def is_vehicle(self) -> bool:
        return self.agent_class.is_vehicle


class OccluderPolygon(BaseModel):
    """A named non-road region; the ring is closed implicitly (last vertex back to first)."""

    model_config = ConfigDict(frozen=True)

    name: str
    vertices: tuple[Point, ...]


class Scenario(BaseModel):
    """
    A recorded (or synthetic) traffic scene.

    ``states`` is keyed by ``(frame, agent_id)``. An agent may appear in any subset of
    the frames, contiguous or gapped, but always with the same class.
    """

    model_config = ConfigDict(frozen=True)

    frames: tuple[int, ...]
    states: dict[tuple[int, str], AgentState]
    occluders: tuple[OccluderPolygon, ...] = ()
    tick_seconds: float = Field(default=DEFAULT_TICK_SECONDS, gt=0.0)

    _by_frame: dict[int, tuple[AgentState, ...]] = PrivateAttr(default_factory=dict)
    _tracks: dict[str, tuple[AgentState, ...]] = PrivateAttr(default_factory=dict)
    _classes: dict[str, AgentClass] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _check_invariants(self) -> "Scenario":
        if any(b <= a for a, b in zip(self.frames, self.frames[1:])):
            raise ValueError("frame indices must be strictly increasing")
        known = set(self.frames)
        classes: dict[str, AgentClass] = {}
        for (frame, agent_id), state in self.states.items():
            if frame not in known:
                raise ValueError(f"state for agent {agent_id} at unknown frame {frame}")
            if state.frame != frame or state.agent_id != agent_id:
                raise ValueError(f"state key ({frame}, {agent_id}) does not match its state")
            previous = classes.setdefault(agent_id, state.agent_class)
            if previous is not state.agent_class:
                raise ValueError(
                    f"agent {agent_id} changes class from {previous} to {state.agent_class}"
                )
        return self

    def model_post_init(self, __context) -> None:
        by_frame: dict[int, list[AgentState]] = {frame: [] for frame in self.frames}
        tracks: dict[str, list[AgentState]] = {}
        for (frame, agent_id), state in sorted(self.states.items()):
            by_frame.setdefault(frame, []).append(state)
            tracks.setdefault(agent_id, []).append(state)
        self._by_frame = {frame: tuple(states) for frame, states in by_frame.items()}
        self._tracks = {agent_id: tuple(states) for agent_id, states in tracks.items()}
        self._classes = {agent_id: states[0].agent_class for agent_id, states in tracks.items()}

    # ═══════════════════════════════════════════════════════════════════
    # Lookups
    # ═══════════════════════════════════════════════════════════════════

    @property
    def agent_ids(self) -> list[str]:
        return sorted(self._tracks)

    @property
    def vehicle_ids(self) -> list[str]:
        return sorted(a for a, c in self._classes.items() if c.is_vehicle)

    @property
    def vru_ids(self) -> list[str]:
        return sorted(a for a, c in self._classes.items() if c.is_vru)

    def agent_class(self, agent_id: str) -> AgentClass:
        return self._classes[agent_id]

    def agents_at(self, frame: int) -> tuple[AgentState, ...]:
        """States present at ``frame``, ordered by agent id."""
        return self._by_frame.get(frame, ())

    def track(self, agent_id: str) -> tuple[AgentState, ...]:
        """All states of one agent, ordered by frame."""
        return self._tracks.get(agent_id, ())

    def has(self, frame: int, agent_id: str) -> bool:
        return (frame, agent_id) in self.states

    def state(self, frame: int, agent_id: str) -> AgentState:
        try:
            return self.states[(frame, agent_id)]
        except KeyError:
            raise AgentNotPresentError(agent_id, frame) from None

    @property
    def duration_seconds(self) -> float:
        if not self.frames:
            return 0.0
        return (self.frames[-1] - self.frames[0] + 1) * self.tick_seconds

    def bounds(self) -> tuple[float, float, float, float]:
        """(min_x, min_y, max_x, max_y) over all agent positions and occluder vertices."""
        xs = [s.position[0] for s in self.states.values()]
        ys = [s.position[1] for s in self.states.values()]
        for polygon in self.occluders:
            xs.extend(v[0] for v in polygon.vertices)
            ys.extend(v[1] for v in polygon.vertices)
        if not xs:
            return (0.0, 0.0, 0.0, 0.0)
        return (min(xs), min(ys), max(xs), max(ys))

    def with_occluders(self, occluders: tuple[OccluderPolygon, ...] | list[OccluderPolygon]) -> "Scenario":
        return Scenario(
            frames=self.frames,
            states=self.states,
            occluders=tuple(occluders),
            tick_seconds=self.tick_seconds,
        )


def build_scenario(
    states: list[AgentState],
    occluders: list[OccluderPolygon] | tuple[OccluderPolygon, ...] = (),
    tick_seconds: float = DEFAULT_TICK_SECONDS,
) -> Scenario:
    """Assemble a Scenario from a flat list of states; the frame set is their union."""
    frames = tuple(sorted({s.frame for s in states}))
    return Scenario(
        frames=frames,
        states={(s.frame, s.agent_id): s for s in states},
        occluders=tuple(occluders),
        tick_seconds=tick_seconds,
    )


__all__ = [
    "AgentClass",
    "AgentState",
    "OccluderPolygon",
    "Scenario",
    "PairType",
    "Point",
    "Vector",
    "DEFAULT_TICK_SECONDS",
    "build_scenario",
    "derive_heading",
    "pair_type",
]
