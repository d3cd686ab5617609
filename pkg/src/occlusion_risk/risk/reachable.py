"""
Reachable Sets
==============

Safety volumes swept by an agent over the prediction horizon, and the overlap test
behind the ``i_over`` indicator.

VEHICLES:
    Constant-acceleration projection over ``prediction_horizon``:
        displacement = v*T + a*T^2/2,  predicted velocity = v + a*T
    The footprint rectangle is enlarged by the safety margin (base + buffer) on every
    side and by ``lateral_sway_coeff * width`` on each lateral side, placed at the current
    and predicted poses, and the region is the convex hull of both rectangles.

VRUs:
    A disc at the current position, radius = |displacement| + safety margin.

Overlap: polygon-polygon by separating axes, disc-polygon by closest-point distance,
disc-disc by center distance. Touching counts as overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from shapely.geometry import MultiPoint, Point, Polygon

from occlusion_risk.models.run_config import RiskConfig
from occlusion_risk.models.scene import AgentState, Vector


@dataclass(frozen=True, eq=False)
class ReachablePolygon:
    """Convex swept footprint of a vehicle; vertices counter-clockwise, not closed."""

    vertices: np.ndarray

    @property
    def center(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @property
    def bounding_radius(self) -> float:
        return float(np.max(np.linalg.norm(self.vertices - self.center, axis=1)))


@dataclass(frozen=True, eq=False)
class ReachableDisc:
    """Reachable set of a VRU."""

    center: np.ndarray
    radius: float

    @property
    def bounding_radius(self) -> float:
        return self.radius


ReachableRegion = ReachablePolygon | ReachableDisc


def rotated_corners(position: np.ndarray, length: float, width: float, heading: float) -> np.ndarray:
    """Four corners of an oriented rectangle centred on ``position``."""
    c, s = math.cos(heading), math.sin(heading)
    rot = np.array([[c, -s], [s, c]])
    half = np.array([
        [length / 2.0, width / 2.0],
        [length / 2.0, -width / 2.0],
        [-length / 2.0, -width / 2.0],
        [-length / 2.0, width / 2.0],
    ])
    return half @ rot.T + position


def predicted_motion(state: AgentState, acceleration: Vector, horizon: float) -> tuple[np.ndarray, np.ndarray]:
    """(displacement, velocity) after ``horizon`` seconds of constant acceleration."""
    v = np.asarray(state.velocity, dtype=float)
    a = np.asarray(acceleration, dtype=float)
    return v * horizon + 0.5 * a * horizon ** 2, v + a * horizon


def reachable_region(state: AgentState, config: RiskConfig, acceleration: Vector = (0.0, 0.0)) -> ReachableRegion:
    """
    Reachable set of one agent at one frame.

    Examples:
        stationary pedestrian -> disc of radius 1.0 m (0 + 0.7 + 0.3)
        car at origin, v (10, 0), a 0 -> hull spanning x in [-L/2 - 1.0, 6 + L/2 + 1.0]
    """
    displacement, velocity = predicted_motion(state, acceleration, config.prediction_horizon)
    margin = config.safety_margin
    position = np.asarray(state.position, dtype=float)

    if state.agent_class.is_vru:
        return ReachableDisc(center=position, radius=float(np.linalg.norm(displacement)) + margin)

    length = state.length + 2.0 * margin
    width = state.width + 2.0 * (margin + config.lateral_sway_coeff * state.width)

    end_heading = state.heading
    if float(np.linalg.norm(velocity)) > config.motion_threshold:
        end_heading = math.atan2(velocity[1], velocity[0])

    corners = np.vstack([
        rotated_corners(position, length, width, state.heading),
        rotated_corners(position + displacement, length, width, end_heading),
    ])
    hull = MultiPoint([tuple(p) for p in corners]).convex_hull
    ring = _ccw_vertices(hull)
    return ReachablePolygon(vertices=ring)


def _ccw_vertices(polygon: Polygon) -> np.ndarray:
    coords = np.asarray(polygon.exterior.coords, dtype=float)[:-1]
    if not polygon.exterior.is_ccw:
        coords = coords[::-1]
    return coords


def _edge_normals(vertices: np.ndarray) -> np.ndarray:
    edges = np.roll(vertices, -1, axis=0) - vertices
    normals = np.column_stack([-edges[:, 1], edges[:, 0]])
    lengths = np.linalg.norm(normals, axis=1)
    return normals[lengths > 0.0] / lengths[lengths > 0.0, None]


def separating_axis_overlap(vertices_a: np.ndarray, vertices_b: np.ndarray) -> bool:
    """
    Separating-axis test for two convex polygons given as (n, 2) vertex arrays.

    Returns True when no edge normal of either polygon separates the projections;
    touching projections are not a separation.
    """
    axes = np.vstack([_edge_normals(vertices_a), _edge_normals(vertices_b)])
    proj_a = vertices_a @ axes.T
    proj_b = vertices_b @ axes.T
    separated = (proj_a.max(axis=0) < proj_b.min(axis=0)) | (proj_b.max(axis=0) < proj_a.min(axis=0))
    return not bool(np.any(separated))


def overlap_indicator(region_i: ReachableRegion, region_j: ReachableRegion) -> bool:
    """True iff the two reachable sets intersect (boundary contact included)."""
    if isinstance(region_i, ReachableDisc) and isinstance(region_j, ReachableDisc):
        return float(np.linalg.norm(region_i.center - region_j.center)) <= region_i.radius + region_j.radius
    if isinstance(region_i, ReachableDisc):
        region_i, region_j = region_j, region_i
    if isinstance(region_j, ReachableDisc):
        polygon = Polygon(region_i.vertices)
        return polygon.distance(Point(region_j.center)) <= region_j.radius
    return separating_axis_overlap(region_i.vertices, region_j.vertices)


def regions_may_overlap(region_i: ReachableRegion, region_j: ReachableRegion) -> bool:
    """Cheap bounding-circle prefilter; False means the regions certainly do not overlap."""
    gap = float(np.linalg.norm(np.asarray(region_i.center) - np.asarray(region_j.center)))
    return gap <= region_i.bounding_radius + region_j.bounding_radius


__all__ = [
    "ReachableDisc",
    "ReachablePolygon",
    "ReachableRegion",
    "overlap_indicator",
    "predicted_motion",
    "reachable_region",
    "regions_may_overlap",
    "rotated_corners",
    "separating_axis_overlap",
]
