"""Convex bodies in 2D/3D and the functionals entering the kinematic formulas.

2D bodies expose perimeter L and area A; 3D bodies volume V, surface
area A, and the integral of mean curvature M.  For convex polytopes M is
the edge sum (1/2) * sum of edge length times exterior dihedral angle,
the convention consistent with M(ball of radius r) = 4*pi*r.

Disks and balls are stored center-at-origin; a zero radius is allowed
and represents a point body (all functionals vanish).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import GeometryError

PLANE_TOL = 1e-9


@dataclass(frozen=True)
class Disk:
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise GeometryError("disk radius must be >= 0", field="radius")
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class Ball:
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise GeometryError("ball radius must be >= 0", field="radius")
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self) -> int:
        return 3


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon with counterclockwise vertices and positive area."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise GeometryError("polygon needs at least 3 vertices of dimension 2", field="vertices")
        n = v.shape[0]
        for i in range(n):
            a, b, c = v[i], v[(i + 1) % n], v[(i + 2) % n]
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if cross < -PLANE_TOL:
                raise GeometryError(
                    f"polygon is not convex/counterclockwise at vertex {(i + 1) % n}",
                    field=f"vertices[{(i + 1) % n}]",
                )
        if _shoelace_area(v) <= PLANE_TOL:
            raise GeometryError("polygon is degenerate (area is not positive)", field="vertices")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class ConvexPolytope:
    """Convex triangulated polytope; faces wind counterclockwise seen from outside."""

    vertices: np.ndarray
    faces: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        f = np.array(self.faces, dtype=np.int64)
        if v.ndim != 2 or v.shape[1] != 3 or v.shape[0] < 4:
            raise GeometryError("polytope needs at least 4 vertices of dimension 3", field="vertices")
        if f.ndim != 2 or f.shape[1] != 3:
            raise GeometryError("faces must be vertex index triples", field="faces")
        if f.min() < 0 or f.max() >= v.shape[0]:
            raise GeometryError("face references a nonexistent vertex", field="faces")
        edges: dict[tuple[int, int], int] = {}
        directed: set[tuple[int, int]] = set()
        for fi, (a, b, c) in enumerate(f):
            for i, j in ((a, b), (b, c), (c, a)):
                if i == j:
                    raise GeometryError(f"face {fi} repeats vertex {i}", field=f"faces[{fi}]")
                if (int(i), int(j)) in directed:
                    raise GeometryError(
                        f"inconsistent winding: directed edge ({i}, {j}) appears twice",
                        field=f"faces[{fi}]",
                    )
                directed.add((int(i), int(j)))
                key = (min(int(i), int(j)), max(int(i), int(j)))
                edges[key] = edges.get(key, 0) + 1
        for (i, j), count in edges.items():
            if count != 2:
                raise GeometryError(
                    f"polytope is not watertight: edge ({i}, {j}) shared by {count} faces",
                    field="faces",
                )
        # every vertex on or inside every face plane (also checks outward winding)
        for fi, (a, b, c) in enumerate(f):
            normal = np.cross(v[b] - v[a], v[c] - v[a])
            norm = np.linalg.norm(normal)
            if norm <= PLANE_TOL:
                raise GeometryError(f"face {fi} is degenerate", field=f"faces[{fi}]")
            normal = normal / norm
            dist = (v - v[a]) @ normal
            worst = int(np.argmax(dist))
            if dist[worst] > PLANE_TOL:
                raise GeometryError(
                    f"vertex {worst} lies outside face {fi}: polytope not convex "
                    f"or face wound inward",
                    field=f"vertices[{worst}]",
                )
        if _polytope_volume(v, f) <= PLANE_TOL:
            raise GeometryError("polytope is degenerate (volume is not positive)", field="vertices")
        v.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "faces", f)

    @property
    def dim(self) -> int:
        return 3


Body2D = Disk | ConvexPolygon
Body3D = Ball | ConvexPolytope
Body = Disk | ConvexPolygon | Ball | ConvexPolytope


@dataclass(frozen=True)
class Functionals2D:
    perimeter: float
    area: float


@dataclass(frozen=True)
class Functionals3D:
    volume: float
    surface_area: float
    mean_curvature: float  # integral of mean curvature over the boundary


def _shoelace_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _polytope_volume(v: np.ndarray, f: np.ndarray) -> float:
    a, b, c = v[f[:, 0]], v[f[:, 1]], v[f[:, 2]]
    return float(np.sum(np.einsum("ij,ij->i", a, np.cross(b, c))) / 6.0)


def functionals_2d(body: Body2D) -> Functionals2D:
    """Perimeter and area (closed forms for disks, edge sums for polygons)."""
    if isinstance(body, Disk):
        return Functionals2D(2 * math.pi * body.radius, math.pi * body.radius**2)
    if isinstance(body, ConvexPolygon):
        v = body.vertices
        edges = np.roll(v, -1, axis=0) - v
        return Functionals2D(float(np.linalg.norm(edges, axis=1).sum()), _shoelace_area(v))
    raise ValueError(f"not a 2D body: {type(body).__name__}")


def functionals_3d(body: Body3D) -> Functionals3D:
    """Volume, surface area, and integral of mean curvature."""
    if isinstance(body, Ball):
        r = body.radius
        return Functionals3D(4 / 3 * math.pi * r**3, 4 * math.pi * r**2, 4 * math.pi * r)
    if isinstance(body, ConvexPolytope):
        v, f = body.vertices, body.faces
        a, b, c = v[f[:, 0]], v[f[:, 1]], v[f[:, 2]]
        cross = np.cross(b - a, c - a)
        areas = 0.5 * np.linalg.norm(cross, axis=1)
        normals = cross / np.linalg.norm(cross, axis=1)[:, None]
        # exterior dihedral angle at each edge from the two adjacent face normals
        edge_faces: dict[tuple[int, int], list[int]] = {}
        for fi, (i, j, k) in enumerate(f):
            for p, q in ((i, j), (j, k), (k, i)):
                key = (min(int(p), int(q)), max(int(p), int(q)))
                edge_faces.setdefault(key, []).append(fi)
        m = 0.0
        for (i, j), (f1, f2) in edge_faces.items():
            length = float(np.linalg.norm(v[j] - v[i]))
            n1, n2 = normals[f1], normals[f2]
            angle = math.atan2(float(np.linalg.norm(np.cross(n1, n2))), float(n1 @ n2))
            m += 0.5 * length * angle
        return Functionals3D(_polytope_volume(v, f), float(areas.sum()), m)
    raise ValueError(f"not a 3D body: {type(body).__name__}")


def reference_point(body: Body) -> np.ndarray:
    """The body's anchor for motion sampling: its center or centroid."""
    if isinstance(body, (Disk, Ball)):
        return np.zeros(body.dim)
    if isinstance(body, ConvexPolygon):
        v = body.vertices
        x, y = v[:, 0], v[:, 1]
        xn, yn = np.roll(x, -1), np.roll(y, -1)
        cross = x * yn - xn * y
        area = 0.5 * float(cross.sum())
        cx = float(((x + xn) * cross).sum()) / (6 * area)
        cy = float(((y + yn) * cross).sum()) / (6 * area)
        return np.array([cx, cy])
    v, f = body.vertices, body.faces
    a, b, c = v[f[:, 0]], v[f[:, 1]], v[f[:, 2]]
    det = np.einsum("ij,ij->i", a, np.cross(b, c))
    vol = det.sum() / 6.0
    centroid = (det[:, None] * (a + b + c)).sum(axis=0) / (24.0 * vol)
    return centroid


def circumradius(body: Body) -> float:
    """Radius of the smallest ball about the reference point enclosing the body."""
    if isinstance(body, (Disk, Ball)):
        return body.radius
    ref = reference_point(body)
    return float(np.max(np.linalg.norm(body.vertices - ref, axis=1)))


def translated(body: Body, offset) -> Body:
    offset = np.asarray(offset, dtype=float)
    if isinstance(body, ConvexPolygon):
        return ConvexPolygon(body.vertices + offset)
    if isinstance(body, ConvexPolytope):
        return ConvexPolytope(body.vertices + offset, body.faces)
    if np.max(np.abs(offset)) > 0:
        raise ValueError("disks and balls are stored center-at-origin and cannot be translated")
    return body


def recentered(body: Body) -> Body:
    """Copy of the body with its reference point moved to the origin."""
    if isinstance(body, (Disk, Ball)):
        return body
    return translated(body, -reference_point(body))


def transform_body(body: Body, motion) -> Body:
    """Apply a rigid motion to the stored coordinates of a polygon/polytope."""
    if isinstance(body, ConvexPolygon):
        return ConvexPolygon(motion.apply(body.vertices))
    if isinstance(body, ConvexPolytope):
        return ConvexPolytope(motion.apply(body.vertices), body.faces)
    raise ValueError("disks and balls carry no coordinates to transform")


def regular_polygon(sides: int, radius: float) -> ConvexPolygon:
    ang = 2 * math.pi * np.arange(sides) / sides
    return ConvexPolygon(radius * np.stack([np.cos(ang), np.sin(ang)], axis=1))


def rectangle(width: float, height: float) -> ConvexPolygon:
    w, h = width / 2, height / 2
    return ConvexPolygon(np.array([[-w, -h], [w, -h], [w, h], [-w, h]]))


def box3d(lx: float, ly: float, lz: float) -> ConvexPolytope:
    """Axis-aligned box centered at the origin, triangulated watertight."""
    hx, hy, hz = lx / 2, ly / 2, lz / 2
    v = np.array(
        [
            [-hx, -hy, -hz],
            [hx, -hy, -hz],
            [hx, hy, -hz],
            [-hx, hy, -hz],
            [-hx, -hy, hz],
            [hx, -hy, hz],
            [hx, hy, hz],
            [-hx, hy, hz],
        ]
    )
    quads = [
        (0, 3, 2, 1),  # bottom (z = -hz), seen from below
        (4, 5, 6, 7),  # top
        (0, 1, 5, 4),  # front (y = -hy)
        (2, 3, 7, 6),  # back
        (1, 2, 6, 5),  # right (x = +hx)
        (3, 0, 4, 7),  # left
    ]
    faces = []
    for a, b, c, d in quads:
        faces.append((a, b, c))
        faces.append((a, c, d))
    return ConvexPolytope(v, np.array(faces))
