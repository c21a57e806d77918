"""Convex bodies, their geometric functionals, and motion-aware predicates."""

from .bodies import (
    Ball,
    Body,
    Body2D,
    Body3D,
    ConvexPolygon,
    ConvexPolytope,
    Disk,
    Functionals2D,
    Functionals3D,
    box3d,
    circumradius,
    functionals_2d,
    functionals_3d,
    recentered,
    rectangle,
    reference_point,
    regular_polygon,
    transform_body,
    translated,
)
from .io import body_from_dict, body_to_dict, load_geometry, save_geometry
from .predicates import (
    CONTACT_TOL,
    contains,
    contains_mask,
    halfplanes,
    intersects,
    intersects_mask,
    support_data,
)

__all__ = [
    "Ball",
    "Body",
    "Body2D",
    "Body3D",
    "CONTACT_TOL",
    "ConvexPolygon",
    "ConvexPolytope",
    "Disk",
    "Functionals2D",
    "Functionals3D",
    "body_from_dict",
    "body_to_dict",
    "box3d",
    "circumradius",
    "contains",
    "contains_mask",
    "functionals_2d",
    "functionals_3d",
    "halfplanes",
    "intersects",
    "intersects_mask",
    "load_geometry",
    "recentered",
    "rectangle",
    "reference_point",
    "regular_polygon",
    "save_geometry",
    "support_data",
    "transform_body",
    "translated",
]
