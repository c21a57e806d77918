"""Rigid-body motions of the plane and of 3-space.

A planar motion is stored as ``(x, y, theta)`` with the angle kept in
``(-pi, pi]``; a spatial motion as a proper rotation matrix plus a
translation vector.  Composition follows the homogeneous-matrix product,
i.e. ``g1 * g2`` applies ``g2`` first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ORTHO_TOL = 1e-10


def wrap_angle(theta: float) -> float:
    """Reduce an angle to the interval (-pi, pi]."""
    t = math.remainder(theta, math.tau)
    if t <= -math.pi:
        t += math.tau
    return t


def rotation_2d(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def rotation_about_axis(axis, angle: float) -> np.ndarray:
    """Rotation matrix about an arbitrary axis (Rodrigues form)."""
    u = np.asarray(axis, dtype=float)
    n = np.linalg.norm(u)
    if n == 0.0:
        raise ValueError("rotation axis must be nonzero")
    u = u / n
    c, s = math.cos(angle), math.sin(angle)
    k = np.array([[0.0, -u[2], u[1]], [u[2], 0.0, -u[0]], [-u[1], u[0], 0.0]])
    return np.eye(3) * c + s * k + (1.0 - c) * np.outer(u, u)


def zxz_matrix(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """Rotation matrix from ZXZ Euler angles: Rz(alpha) Rx(beta) Rz(gamma)."""
    rz_a = rotation_about_axis((0, 0, 1), alpha)
    rx_b = rotation_about_axis((1, 0, 0), beta)
    rz_g = rotation_about_axis((0, 0, 1), gamma)
    return rz_a @ rx_b @ rz_g


def quaternions_to_matrices(q: np.ndarray) -> np.ndarray:
    """Convert unit quaternions (..., 4), scalar first, to rotation matrices."""
    q = np.asarray(q, dtype=float)
    q = q / np.linalg.norm(q, axis=-1, keepdims=True)
    w, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    m = np.empty(q.shape[:-1] + (3, 3))
    m[..., 0, 0] = 1 - 2 * (y * y + z * z)
    m[..., 0, 1] = 2 * (x * y - z * w)
    m[..., 0, 2] = 2 * (x * z + y * w)
    m[..., 1, 0] = 2 * (x * y + z * w)
    m[..., 1, 1] = 1 - 2 * (x * x + z * z)
    m[..., 1, 2] = 2 * (y * z - x * w)
    m[..., 2, 0] = 2 * (x * z - y * w)
    m[..., 2, 1] = 2 * (y * z + x * w)
    m[..., 2, 2] = 1 - 2 * (x * x + y * y)
    return m


def check_rotation_matrix(r: np.ndarray, tol: float = ORTHO_TOL) -> None:
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise ValueError(f"rotation matrix must be 3x3, got {r.shape}")
    if np.max(np.abs(r @ r.T - np.eye(3))) > tol:
        raise ValueError("matrix is not orthogonal within tolerance")
    if abs(np.linalg.det(r) - 1.0) > tol:
        raise ValueError("matrix determinant is not +1 within tolerance")


@dataclass(frozen=True)
class RigidMotion2D:
    """Element of the planar motion group: rotation by theta then translation."""

    x: float = 0.0
    y: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "theta", wrap_angle(float(self.theta)))

    @property
    def dim(self) -> int:
        return 2

    @property
    def rotation(self) -> np.ndarray:
        return rotation_2d(self.theta)

    @property
    def translation(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def matrix(self) -> np.ndarray:
        m = np.eye(3)
        m[:2, :2] = self.rotation
        m[0, 2] = self.x
        m[1, 2] = self.y
        return m

    def apply(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.rotation.T + self.translation

    @classmethod
    def identity(cls) -> "RigidMotion2D":
        return cls(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class RigidMotion3D:
    """Element of the spatial motion group: proper rotation plus translation."""

    r: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        t = np.array(self.t, dtype=float).reshape(3)
        check_rotation_matrix(r)
        r.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "t", t)

    @property
    def dim(self) -> int:
        return 3

    @property
    def rotation(self) -> np.ndarray:
        return self.r

    @property
    def translation(self) -> np.ndarray:
        return self.t

    def matrix(self) -> np.ndarray:
        m = np.eye(4)
        m[:3, :3] = self.r
        m[:3, 3] = self.t
        return m

    def apply(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.r.T + self.t

    @classmethod
    def identity(cls) -> "RigidMotion3D":
        return cls(np.eye(3), np.zeros(3))


RigidMotion = RigidMotion2D | RigidMotion3D


def compose(g1: RigidMotion, g2: RigidMotion) -> RigidMotion:
    """Group product g1 * g2 (g2 acts first): (R1 R2, R1 t2 + t1)."""
    if isinstance(g1, RigidMotion2D) and isinstance(g2, RigidMotion2D):
        c, s = math.cos(g1.theta), math.sin(g1.theta)
        return RigidMotion2D(
            g1.x + c * g2.x - s * g2.y,
            g1.y + s * g2.x + c * g2.y,
            g1.theta + g2.theta,
        )
    if isinstance(g1, RigidMotion3D) and isinstance(g2, RigidMotion3D):
        return RigidMotion3D(g1.r @ g2.r, g1.r @ g2.t + g1.t)
    raise ValueError(
        f"cannot compose motions of different dimensions: {type(g1).__name__} with {type(g2).__name__}"
    )


def inverse(g: RigidMotion) -> RigidMotion:
    """Group inverse: (R, t) -> (R^T, -R^T t)."""
    if isinstance(g, RigidMotion2D):
        c, s = math.cos(g.theta), math.sin(g.theta)
        return RigidMotion2D(-(c * g.x + s * g.y), -(-s * g.x + c * g.y), -g.theta)
    if isinstance(g, RigidMotion3D):
        return RigidMotion3D(g.r.T, -(g.r.T @ g.t))
    raise ValueError(f"not a rigid motion: {type(g).__name__}")


def motions_close(g1: RigidMotion, g2: RigidMotion, tol: float = 1e-12) -> bool:
    if isinstance(g1, RigidMotion2D) and isinstance(g2, RigidMotion2D):
        dth = abs(wrap_angle(g1.theta - g2.theta))
        return dth <= tol and abs(g1.x - g2.x) <= tol and abs(g1.y - g2.y) <= tol
    if isinstance(g1, RigidMotion3D) and isinstance(g2, RigidMotion3D):
        return (
            float(np.max(np.abs(g1.r - g2.r))) <= tol
            and float(np.max(np.abs(g1.t - g2.t))) <= tol
        )
    return False
