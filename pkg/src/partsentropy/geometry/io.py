"""Strict JSON loading/dumping of convex bodies.

Schema: {"dim": 2|3, "kind": "disk"|"polygon"|"ball"|"polytope",
"radius": r | "vertices": [[...]], "faces": [[i,j,k], ...]}.
Errors carry the offending field (and source line for parse errors).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import GeometryError
from .bodies import Ball, Body, ConvexPolygon, ConvexPolytope, Disk

_KINDS_BY_DIM = {2: ("disk", "polygon"), 3: ("ball", "polytope")}


def body_from_dict(data: dict) -> Body:
    if not isinstance(data, dict):
        raise GeometryError("geometry document must be a JSON object")
    dim = data.get("dim")
    if dim not in (2, 3):
        raise GeometryError(f"dim must be 2 or 3, got {dim!r}", field="dim")
    kind = data.get("kind")
    if kind not in _KINDS_BY_DIM[dim]:
        raise GeometryError(
            f"kind {kind!r} invalid for dim {dim}; expected one of {_KINDS_BY_DIM[dim]}",
            field="kind",
        )
    if kind in ("disk", "ball"):
        if "radius" not in data or not isinstance(data["radius"], (int, float)):
            raise GeometryError("disk/ball requires a numeric radius", field="radius")
        return Disk(float(data["radius"])) if kind == "disk" else Ball(float(data["radius"]))
    if "vertices" not in data:
        raise GeometryError(f"{kind} requires a vertices list", field="vertices")
    try:
        vertices = np.asarray(data["vertices"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise GeometryError(f"vertices are not numeric: {exc}", field="vertices") from exc
    if kind == "polygon":
        return ConvexPolygon(vertices)
    if "faces" not in data:
        raise GeometryError("polytope requires a faces list", field="faces")
    try:
        faces = np.asarray(data["faces"], dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise GeometryError(f"faces are not integer triples: {exc}", field="faces") from exc
    return ConvexPolytope(vertices, faces)


def body_to_dict(body: Body) -> dict:
    if isinstance(body, Disk):
        return {"dim": 2, "kind": "disk", "radius": body.radius}
    if isinstance(body, Ball):
        return {"dim": 3, "kind": "ball", "radius": body.radius}
    if isinstance(body, ConvexPolygon):
        return {"dim": 2, "kind": "polygon", "vertices": body.vertices.tolist()}
    if isinstance(body, ConvexPolytope):
        return {
            "dim": 3,
            "kind": "polytope",
            "vertices": body.vertices.tolist(),
            "faces": body.faces.tolist(),
        }
    raise ValueError(f"not a body: {type(body).__name__}")


def load_geometry(path) -> Body:
    """Parse and fully validate a geometry file."""
    path = Path(path)
    if not path.exists():
        raise GeometryError(f"geometry file not found: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise GeometryError(
            f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            line=exc.lineno,
        ) from exc
    try:
        return body_from_dict(data)
    except GeometryError as exc:
        raise GeometryError(f"{path}: {exc}", field=exc.field) from exc


def save_geometry(body: Body, path) -> None:
    Path(path).write_text(json.dumps(body_to_dict(body), indent=2) + "\n")
