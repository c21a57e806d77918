"""Collision and containment predicates for convex bodies under rigid motions.

``intersects(c0, c1, g)`` tests c0 against the moved body g*c1;
``contains(container, c1, g)`` tests g*c1 inside the container.  Closed
bodies: boundary contact within 1e-9 counts for both predicates.  Batch
variants evaluate a whole array of motions for the Monte Carlo loops.
"""

from __future__ import annotations

import numpy as np

from ..groups.rigid import RigidMotion2D, RigidMotion3D
from ._gjk import (
    CONTACT_TOL,
    gjk_intersects_2d,
    gjk_intersects_3d,
    gjk_mask_2d,
    gjk_mask_3d,
)
from .bodies import Ball, Body, ConvexPolygon, ConvexPolytope, Disk


def support_data(body: Body) -> tuple[np.ndarray, float]:
    """Vertex cloud plus sphere-swept radius representing the body's support."""
    if isinstance(body, (Disk, Ball)):
        return np.zeros((1, body.dim)), body.radius
    return np.asarray(body.vertices), 0.0


def halfplanes(body: Body) -> tuple[np.ndarray, np.ndarray]:
    """Unit outward normals and offsets (n . x <= b) describing a convex hull."""
    if isinstance(body, ConvexPolygon):
        v = body.vertices
        edges = np.roll(v, -1, axis=0) - v
        normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
        normals /= np.linalg.norm(normals, axis=1)[:, None]
        return normals, np.einsum("ij,ij->i", normals, v)
    if isinstance(body, ConvexPolytope):
        v, f = body.vertices, body.faces
        normals = np.cross(v[f[:, 1]] - v[f[:, 0]], v[f[:, 2]] - v[f[:, 0]])
        normals /= np.linalg.norm(normals, axis=1)[:, None]
        return normals, np.einsum("ij,ij->i", normals, v[f[:, 0]])
    raise ValueError("half-plane form only exists for polygons and polytopes")


def _check_motion(c0: Body, c1: Body, g) -> None:
    if c0.dim != c1.dim:
        raise ValueError(f"bodies have different dimensions: {c0.dim} vs {c1.dim}")
    expected = RigidMotion2D if c0.dim == 2 else RigidMotion3D
    if not isinstance(g, expected):
        raise ValueError(f"motion dimension does not match {c0.dim}D bodies")


def intersects(c0: Body, c1: Body, g) -> bool:
    """True iff c0 and g*c1 share a point."""
    _check_motion(c0, c1, g)
    if isinstance(c0, (Disk, Ball)) and isinstance(c1, (Disk, Ball)):
        return float(np.linalg.norm(g.translation)) <= c0.radius + c1.radius + CONTACT_TOL
    v0, r0 = support_data(c0)
    v1, r1 = support_data(c1)
    if c0.dim == 2:
        return bool(gjk_intersects_2d(v0, r0, v1, r1, g.theta, g.x, g.y))
    return bool(gjk_intersects_3d(v0, r0, v1, r1, g.r, g.t))


def contains(container: Body, c1: Body, g) -> bool:
    """True iff g*c1 lies inside the container (boundary included)."""
    _check_motion(container, c1, g)
    v1, r1 = support_data(c1)
    moved = g.apply(v1)
    if isinstance(container, (Disk, Ball)):
        reach = float(np.max(np.linalg.norm(moved, axis=1))) + r1
        return reach <= container.radius + CONTACT_TOL
    normals, offsets = halfplanes(container)
    proj = moved @ normals.T + r1
    return bool(np.all(proj <= offsets[None, :] + CONTACT_TOL))


def _rotations_2d(thetas: np.ndarray) -> np.ndarray:
    c, s = np.cos(thetas), np.sin(thetas)
    rots = np.empty((thetas.size, 2, 2))
    rots[:, 0, 0] = c
    rots[:, 0, 1] = -s
    rots[:, 1, 0] = s
    rots[:, 1, 1] = c
    return rots


def _moved_vertices(verts: np.ndarray, samples) -> np.ndarray:
    """Vertex clouds under a batch of motions: (n, n_verts, dim)."""
    rots = samples.matrices if samples.matrices is not None else _rotations_2d(samples.angles)
    return np.einsum("nij,vj->nvi", rots, verts) + samples.translations[:, None, :]


def intersects_mask(c0: Body, c1: Body, samples) -> np.ndarray:
    """Vector of intersects(c0, c1, g) over a MotionSamples batch."""
    if isinstance(c0, (Disk, Ball)) and isinstance(c1, (Disk, Ball)):
        dist = np.linalg.norm(samples.translations, axis=1)
        return dist <= c0.radius + c1.radius + CONTACT_TOL
    v0, r0 = support_data(c0)
    v1, r1 = support_data(c1)
    out = np.zeros(len(samples), dtype=np.bool_)
    if c0.dim == 2:
        gjk_mask_2d(v0, r0, v1, r1, samples.angles, samples.translations, out)
    else:
        gjk_mask_3d(v0, r0, v1, r1, samples.matrices, samples.translations, out)
    return out


def contains_mask(container: Body, c1: Body, samples) -> np.ndarray:
    """Vector of contains(container, c1, g) over a MotionSamples batch."""
    v1, r1 = support_data(c1)
    moved = _moved_vertices(v1, samples)
    if isinstance(container, (Disk, Ball)):
        reach = np.linalg.norm(moved, axis=2).max(axis=1) + r1
        return reach <= container.radius + CONTACT_TOL
    normals, offsets = halfplanes(container)
    proj = np.einsum("nvi,mi->nvm", moved, normals) + r1
    return np.all(proj <= offsets[None, None, :] + CONTACT_TOL, axis=(1, 2))
