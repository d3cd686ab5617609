"""
Map File Parser
===============

Reads the non-road occluder polygons of a scene from a JSON document:

    {
      "polygons": [
        {"name": "block_ne", "kind": "non_road", "vertices": [[10, 10], [40, 10], [40, 40], [10, 40]]}
      ]
    }

Rings are closed implicitly; a repeated closing vertex is accepted and dropped.
Polygons must be simple (no self-intersection) with non-zero area.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError
from shapely.geometry import LinearRing, Polygon

from occlusion_risk.errors import InputError, ScenarioValidationError
from occlusion_risk.models.scene import OccluderPolygon

logger = logging.getLogger(__name__)


class PolygonEntry(BaseModel):
    name: str
    kind: Literal["non_road"] = "non_road"
    vertices: list[tuple[float, float]] = Field(min_length=3)


class MapDocument(BaseModel):
    polygons: list[PolygonEntry] = Field(default_factory=list)


def validate_polygon(name: str, vertices: list[tuple[float, float]], *, path: str | Path | None = None) -> OccluderPolygon:
    """
    Check one ring and turn it into an OccluderPolygon.

    Raises:
        ScenarioValidationError: fewer than 3 distinct vertices, zero area, or self-intersection
    """
    ring = list(vertices)
    if len(ring) > 1 and ring[0] == ring[-1]:
        ring = ring[:-1]
    if len(set(ring)) < 3:
        raise ScenarioValidationError(f"degenerate polygon '{name}': fewer than 3 distinct vertices", path=path)
    if not LinearRing(ring).is_simple:
        raise ScenarioValidationError(f"self-intersecting polygon '{name}'", path=path)
    if Polygon(ring).area <= 0.0:
        raise ScenarioValidationError(f"degenerate polygon '{name}': zero area", path=path)
    return OccluderPolygon(name=name, vertices=tuple((float(x), float(y)) for x, y in ring))


def parse_map(path: str | Path) -> list[OccluderPolygon]:
    """Parse a map file into occluder polygons, preserving file order."""
    path = Path(path)
    if not path.is_file():
        raise InputError("map file not found", path=path)
    try:
        document = MapDocument.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as exc:
        raise InputError(f"invalid map document: {exc.errors()[0]['msg']}", path=path) from exc

    polygons = [validate_polygon(entry.name, entry.vertices, path=path) for entry in document.polygons]
    logger.info("Loaded %s: %d occluder polygons", path.name, len(polygons))
    return polygons


def write_map(polygons: list[OccluderPolygon] | tuple[OccluderPolygon, ...], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {
        "polygons": [
            {"name": p.name, "kind": "non_road", "vertices": [list(v) for v in p.vertices]}
            for p in polygons
        ]
    }
    path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    return path


__all__ = ["parse_map", "write_map", "validate_polygon", "MapDocument"]
