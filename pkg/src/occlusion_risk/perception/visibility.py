"""
Visibility
==========

Decides, frame by frame, which agents each observer can perceive.

A target is visible to an observer only if all three hold:

    1. RANGE  - center distance <= perception range (75 m by default)
    2. FOV    - bearing to the target lies within +/- fov/2 of the observer heading
    3. LOS    - the center-to-center segment is not blocked by
                  * the ellipse of any vehicle other than the observer and the target
                  * any non-road occluder polygon
                VRUs never occlude.

HOW IT WORKS:
-------------
Line of sight does not depend on field of view, so ``FrameGeometry`` computes the range
and LoS matrices for all ordered pairs of a frame once (numpy for the ellipses, a shapely
STRtree for the polygons) and any FoV assignment is then applied as a cheap mask.
``VisibilityModel`` caches one FrameGeometry per frame for a scenario/config pair, which
is what Monte Carlo sweeps reuse across every draw.

Blocking is strict: the open segment must enter the open interior of an occluder.
Grazing an ellipse tangentially or touching a polygon vertex does not block.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np
import shapely
from shapely.geometry import LineString, Point, Polygon
from shapely.strtree import STRtree

from occlusion_risk.errors import AgentNotPresentError
from occlusion_risk.models.run_config import FULL_CIRCLE, FovMode, RiskConfig
from occlusion_risk.models.scene import AgentState, OccluderPolygon, Scenario

logger = logging.getLogger(__name__)

_EPS = 1e-12
INTERIOR_INTERSECTS = "T********"


# ═══════════════════════════════════════════════════════════════════════════
# Types
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class OccluderEllipse:
    """Oriented ellipse standing in for a vehicle body."""

    center: tuple[float, float]
    semi_major: float
    semi_minor: float
    orientation: float

    def __post_init__(self) -> None:
        if not (self.semi_major >= self.semi_minor > 0.0):
            raise ValueError("ellipse needs semi_major >= semi_minor > 0")

    @classmethod
    def of(cls, state: AgentState) -> "OccluderEllipse":
        """Ellipse of a vehicle footprint; the major axis follows the longer side."""
        if state.length >= state.width:
            return cls(state.position, state.length / 2.0, state.width / 2.0, state.heading)
        return cls(state.position, state.width / 2.0, state.length / 2.0, state.heading + math.pi / 2.0)


@dataclass(frozen=True)
class VisibilityRelation:
    """Directed observer -> target perceivability at one frame."""

    frame: int
    sees: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self.sees

    def __len__(self) -> int:
        return len(self.sees)

    def observed_by(self, observer: str) -> frozenset[str]:
        return frozenset(t for o, t in self.sees if o == observer)

    def issubset(self, other: "VisibilityRelation") -> bool:
        return self.sees <= other.sees


# ═══════════════════════════════════════════════════════════════════════════
# Primitive tests
# ═══════════════════════════════════════════════════════════════════════════

def _wrap_angle(angle: np.ndarray | float) -> np.ndarray | float:
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


def in_fov(observer: AgentState, target_point: tuple[float, float], fov: float, max_range: float) -> bool:
    """
    Range and field-of-view test from the observer's center and heading.

    Example:
        observer at origin heading +x, fov 120 deg, range 75:
        (5, 0) -> True, (0, 5) -> False
    """
    dx = target_point[0] - observer.position[0]
    dy = target_point[1] - observer.position[1]
    distance = math.hypot(dx, dy)
    if distance > max_range:
        return False
    if fov >= FULL_CIRCLE or distance == 0.0:
        return True
    offset = abs(_wrap_angle(math.atan2(dy, dx) - observer.heading))
    return offset <= fov / 2.0 + _EPS


def segments_blocked_by_ellipses(
    starts: np.ndarray,
    ends: np.ndarray,
    centers: np.ndarray,
    semi_major: np.ndarray,
    semi_minor: np.ndarray,
    orientation: np.ndarray,
) -> np.ndarray:
    """
    Vectorized blocking test for n segments against m ellipses -> (n, m) bool.

    Each segment is mapped into every ellipse's frame scaled to the unit circle; the open
    segment is blocked when the quadratic |a + t(b - a)|^2 = 1 has two distinct roots whose
    interval overlaps (0, 1).
    """
    starts = np.asarray(starts, dtype=float).reshape(-1, 2)
    ends = np.asarray(ends, dtype=float).reshape(-1, 2)
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    if starts.shape[0] == 0 or centers.shape[0] == 0:
        return np.zeros((starts.shape[0], centers.shape[0]), dtype=bool)

    cos_t = np.cos(orientation)[None, :]
    sin_t = np.sin(orientation)[None, :]

    def to_unit(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        rel_x = points[:, None, 0] - centers[None, :, 0]
        rel_y = points[:, None, 1] - centers[None, :, 1]
        local_x = rel_x * cos_t + rel_y * sin_t
        local_y = -rel_x * sin_t + rel_y * cos_t
        return local_x / semi_major[None, :], local_y / semi_minor[None, :]

    ax, ay = to_unit(starts)
    bx, by = to_unit(ends)
    dx, dy = bx - ax, by - ay

    qa = dx * dx + dy * dy
    qb = 2.0 * (ax * dx + ay * dy)
    qc = ax * ax + ay * ay - 1.0

    degenerate = qa < _EPS
    disc = qb * qb - 4.0 * qa * qc
    with np.errstate(invalid="ignore", divide="ignore"):
        root = np.sqrt(np.where(disc > 0.0, disc, 0.0))
        t1 = (-qb - root) / (2.0 * qa)
        t2 = (-qb + root) / (2.0 * qa)
    crossing = (disc > 0.0) & (t1 < 1.0) & (t2 > 0.0)
    return np.where(degenerate, qc < 0.0, crossing)


def segment_blocked_by_ellipse(a: tuple[float, float], b: tuple[float, float], e: OccluderEllipse) -> bool:
    """True iff the open segment (a, b) enters the interior of ellipse ``e``."""
    blocked = segments_blocked_by_ellipses(
        np.array([a]), np.array([b]), np.array([e.center]),
        np.array([e.semi_major]), np.array([e.semi_minor]), np.array([e.orientation]),
    )
    return bool(blocked[0, 0])


def _segment_geometry(a: tuple[float, float], b: tuple[float, float]):
    return Point(a) if tuple(a) == tuple(b) else LineString([a, b])


def segment_blocked_by_polygon(a: tuple[float, float], b: tuple[float, float], poly: OccluderPolygon | Polygon) -> bool:
    """
    True iff the open segment (a, b) meets the open interior of the polygon.

    This covers crossing an edge and lying entirely inside; running along an edge or
    touching a vertex does not block.
    """
    polygon = poly if isinstance(poly, Polygon) else Polygon(poly.vertices)
    return bool(_segment_geometry(a, b).relate_pattern(polygon, INTERIOR_INTERSECTS))


class StaticOccluders:
    """Map polygons behind an STRtree for bulk line-of-sight queries."""

    def __init__(self, occluders: tuple[OccluderPolygon, ...] | list[OccluderPolygon]) -> None:
        self.polygons = [Polygon(p.vertices) for p in occluders]
        self._tree = STRtree(self.polygons) if self.polygons else None

    def __bool__(self) -> bool:
        return self._tree is not None

    def blocked(self, starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
        """Per segment: blocked by at least one polygon."""
        n = len(starts)
        result = np.zeros(n, dtype=bool)
        if self._tree is None or n == 0:
            return result
        coords = np.stack([np.asarray(starts, float), np.asarray(ends, float)], axis=1)
        geoms = shapely.linestrings(coords)
        degenerate = np.all(coords[:, 0] == coords[:, 1], axis=1)
        if degenerate.any():
            geoms[degenerate] = shapely.points(coords[degenerate, 0])
        seg_idx, poly_idx = self._tree.query(geoms, predicate="intersects")
        if len(seg_idx) == 0:
            return result
        hits = shapely.relate_pattern(geoms[seg_idx], self._tree.geometries[poly_idx], INTERIOR_INTERSECTS)
        result[np.unique(seg_idx[hits])] = True
        return result


# ═══════════════════════════════════════════════════════════════════════════
# Per-frame geometry
# ═══════════════════════════════════════════════════════════════════════════

class FrameGeometry:
    """
    FoV-independent part of visibility for one frame.

    Attributes:
        ids:         agent ids present, sorted
        los_clear:   (n, n) True where the line of sight o -> t is unobstructed and in range
        bearing_off: (n, n) |bearing to t - heading of o|, radians in [0, pi]
    """

    def __init__(self, frame: int, scenario: Scenario, config: RiskConfig, static: StaticOccluders) -> None:
        self.frame = frame
        states = scenario.agents_at(frame)
        self.ids = [s.agent_id for s in states]
        n = len(states)
        self._index = {agent_id: i for i, agent_id in enumerate(self.ids)}
        self.los_clear = np.zeros((n, n), dtype=bool)
        self.bearing_off = np.zeros((n, n), dtype=float)
        self.distance = np.zeros((n, n), dtype=float)
        if n < 2:
            return

        pos = np.array([s.position for s in states], dtype=float)
        heading = np.array([s.heading for s in states], dtype=float)
        delta = pos[None, :, :] - pos[:, None, :]
        self.distance = np.hypot(delta[..., 0], delta[..., 1])
        bearing = np.arctan2(delta[..., 1], delta[..., 0])
        self.bearing_off = np.abs(_wrap_angle(bearing - heading[:, None]))
        self.bearing_off[self.distance == 0.0] = 0.0

        obs_idx, tgt_idx = np.nonzero((self.distance <= config.perception_range) & ~np.eye(n, dtype=bool))
        if len(obs_idx) == 0:
            return
        clear = np.ones(len(obs_idx), dtype=bool)

        occluders = [i for i, s in enumerate(states) if s.is_vehicle]
        if occluders:
            ellipses = [OccluderEllipse.of(states[i]) for i in occluders]
            blocked = segments_blocked_by_ellipses(
                pos[obs_idx], pos[tgt_idx],
                np.array([e.center for e in ellipses]),
                np.array([e.semi_major for e in ellipses]),
                np.array([e.semi_minor for e in ellipses]),
                np.array([e.orientation for e in ellipses]),
            )
            owner = np.array(occluders)
            own = (owner[None, :] == obs_idx[:, None]) | (owner[None, :] == tgt_idx[:, None])
            clear &= ~np.any(blocked & ~own, axis=1)

        if static:
            pending = np.nonzero(clear)[0]
            clear[pending] = ~static.blocked(pos[obs_idx[pending]], pos[tgt_idx[pending]])

        self.los_clear[obs_idx, tgt_idx] = clear
        logger.debug("frame %d: %d agents, %d clear sight lines", frame, n, int(clear.sum()))

    def index(self, agent_id: str) -> int:
        try:
            return self._index[agent_id]
        except KeyError:
            raise AgentNotPresentError(agent_id, self.frame) from None

    def sees_matrix(self, fovs: np.ndarray) -> np.ndarray:
        """(n, n) visibility for per-observer FoVs given in ``ids`` order."""
        half = np.asarray(fovs, dtype=float)[:, None] / 2.0
        in_cone = (self.bearing_off <= half + _EPS) | (np.asarray(fovs)[:, None] >= FULL_CIRCLE)
        return self.los_clear & in_cone

    def relation(self, fov_assignment: Mapping[str, float]) -> VisibilityRelation:
        fovs = np.array([fov_assignment[a] for a in self.ids], dtype=float)
        obs, tgt = np.nonzero(self.sees_matrix(fovs))
        return VisibilityRelation(
            frame=self.frame,
            sees=frozenset((self.ids[o], self.ids[t]) for o, t in zip(obs, tgt)),
        )


class VisibilityModel:
    """Lazily computed, cached FrameGeometry for every frame of one scenario."""

    def __init__(self, scenario: Scenario, config: RiskConfig) -> None:
        self.scenario = scenario
        self.config = config
        self.static = StaticOccluders(scenario.occluders)
        self._frames: dict[int, FrameGeometry] = {}

    def geometry(self, frame: int) -> FrameGeometry:
        geometry = self._frames.get(frame)
        if geometry is None:
            geometry = FrameGeometry(frame, self.scenario, self.config, self.static)
            self._frames[frame] = geometry
        return geometry

    def relation(self, frame: int, fov_assignment: Mapping[str, float]) -> VisibilityRelation:
        return self.geometry(frame).relation(fov_assignment)

    def relations(self, fov_assignment: Mapping[str, float]) -> dict[int, VisibilityRelation]:
        return {frame: self.relation(frame, fov_assignment) for frame in self.scenario.frames}


# ═══════════════════════════════════════════════════════════════════════════
# Public operations
# ═══════════════════════════════════════════════════════════════════════════

def can_observe(
    observer_id: str,
    target_id: str,
    frame: int,
    scenario: Scenario,
    fov: float,
    config: RiskConfig,
) -> bool:
    """
    Single-pair visibility: range + FoV + line of sight.

    Raises:
        AgentNotPresentError: either agent is absent at ``frame``
    """
    observer = scenario.state(frame, observer_id)
    target = scenario.state(frame, target_id)
    if observer_id == target_id:
        return False
    if not in_fov(observer, target.position, fov, config.perception_range):
        return False

    for other in scenario.agents_at(frame):
        if other.agent_id in (observer_id, target_id) or not other.is_vehicle:
            continue
        if segment_blocked_by_ellipse(observer.position, target.position, OccluderEllipse.of(other)):
            return False
    return not any(
        segment_blocked_by_polygon(observer.position, target.position, polygon)
        for polygon in scenario.occluders
    )


def visibility_relation(
    frame: int,
    scenario: Scenario,
    fov_assignment: Mapping[str, float],
    config: RiskConfig,
) -> VisibilityRelation:
    """All ordered pairs passing ``can_observe`` at one frame."""
    geometry = FrameGeometry(frame, scenario, config, StaticOccluders(scenario.occluders))
    return geometry.relation(fov_assignment)


def fov_assignment(
    scenario: Scenario,
    mode: FovMode,
    config: RiskConfig,
    connected: frozenset[str] | set[str] = frozenset(),
) -> dict[str, float]:
    """
    Per-agent field of view for a FoV mode.

    homogeneous_360        every agent 360 deg
    all_120                every agent ``fov_nonconnected``
    heterogeneous_120_360  connected vehicles ``fov_connected``, everyone else
                           (non-connected vehicles and VRUs) ``fov_nonconnected``
    """
    if mode is FovMode.HOMOGENEOUS_360:
        return {agent_id: FULL_CIRCLE for agent_id in scenario.agent_ids}
    if mode is FovMode.ALL_120:
        return {agent_id: config.fov_nonconnected for agent_id in scenario.agent_ids}
    return {
        agent_id: config.fov_connected if agent_id in connected else config.fov_nonconnected
        for agent_id in scenario.agent_ids
    }


__all__ = [
    "FrameGeometry",
    "OccluderEllipse",
    "StaticOccluders",
    "VisibilityModel",
    "VisibilityRelation",
    "can_observe",
    "fov_assignment",
    "in_fov",
    "segment_blocked_by_ellipse",
    "segment_blocked_by_polygon",
    "segments_blocked_by_ellipses",
    "visibility_relation",
]
