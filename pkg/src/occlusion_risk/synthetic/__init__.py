"""Deterministic synthetic traffic scenes."""

from occlusion_risk.synthetic.generators import (
    GENERATORS,
    car_following,
    crossing,
    dense_intersection,
    merging,
    occluding_truck,
    write_synthetic,
)

__all__ = [
    "GENERATORS",
    "car_following",
    "crossing",
    "dense_intersection",
    "merging",
    "occluding_truck",
    "write_synthetic",
]
