"""Support-function (GJK-style) intersection kernels for convex bodies.

Bodies enter as vertex clouds plus a sphere-swept radius, so polygons,
polytopes, disks, and balls all share one code path: the support of the
moving body is evaluated through the rotated direction, never by
transforming the vertex cloud.  Boundary contact within ``CONTACT_TOL``
counts as intersection.

The kernels are plain numpy code accelerated with numba when available.
Simplex rows are copied before permuting; in-place row moves would alias.
"""

from __future__ import annotations

import numpy as np

CONTACT_TOL = 1e-9

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is an optional accelerator
    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def _perp_toward(u, w):
    """Vector perpendicular to u, in the u-w plane, pointing toward w."""
    return w * (u @ u) - u * (u @ w)


@njit(cache=True)
def _support3(v0, r0, v1, r1, rot, t, d):
    best0 = 0
    b0 = v0[0, 0] * d[0] + v0[0, 1] * d[1] + v0[0, 2] * d[2]
    for i in range(1, v0.shape[0]):
        s = v0[i, 0] * d[0] + v0[i, 1] * d[1] + v0[i, 2] * d[2]
        if s > b0:
            b0 = s
            best0 = i
    dx = -(rot[0, 0] * d[0] + rot[1, 0] * d[1] + rot[2, 0] * d[2])
    dy = -(rot[0, 1] * d[0] + rot[1, 1] * d[1] + rot[2, 1] * d[2])
    dz = -(rot[0, 2] * d[0] + rot[1, 2] * d[1] + rot[2, 2] * d[2])
    best1 = 0
    b1 = v1[0, 0] * dx + v1[0, 1] * dy + v1[0, 2] * dz
    for i in range(1, v1.shape[0]):
        s = v1[i, 0] * dx + v1[i, 1] * dy + v1[i, 2] * dz
        if s > b1:
            b1 = s
            best1 = i
    w = np.empty(3)
    for k in range(3):
        w[k] = v0[best0, k] - (
            rot[k, 0] * v1[best1, 0]
            + rot[k, 1] * v1[best1, 1]
            + rot[k, 2] * v1[best1, 2]
            + t[k]
        )
    nd = np.sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])
    if nd > 0.0:
        rr = (r0 + r1) / nd
        w[0] += rr * d[0]
        w[1] += rr * d[1]
        w[2] += rr * d[2]
    return w


@njit(cache=True)
def _line3(simplex, npts, d):
    a = simplex[npts - 1].copy()
    b = simplex[npts - 2].copy()
    ab = b - a
    ao = -a
    if ab @ ao > 0.0:
        simplex[0] = b
        simplex[1] = a
        d[:] = _perp_toward(ab, ao)
        return 2
    simplex[0] = a
    d[:] = ao
    return 1


@njit(cache=True)
def _triangle3(simplex, npts, d):
    a = simplex[npts - 1].copy()
    b = simplex[npts - 2].copy()
    c = simplex[npts - 3].copy()
    ab = b - a
    ac = c - a
    ao = -a
    abc = np.cross(ab, ac)
    if np.cross(abc, ac) @ ao > 0.0:
        if ac @ ao > 0.0:
            simplex[0] = c
            simplex[1] = a
            d[:] = _perp_toward(ac, ao)
            return 2
        simplex[0] = b
        simplex[1] = a
        return _line3(simplex, 2, d)
    if np.cross(ab, abc) @ ao > 0.0:
        simplex[0] = b
        simplex[1] = a
        return _line3(simplex, 2, d)
    if abc @ ao > 0.0:
        simplex[0] = c
        simplex[1] = b
        simplex[2] = a
        d[:] = abc
        return 3
    simplex[0] = b
    simplex[1] = c
    simplex[2] = a
    d[:] = -abc
    return 3


@njit(cache=True)
def gjk_intersects_3d(v0, r0, v1, r1, rot, t):
    """True iff body0 intersects the moved body1 (contact counts)."""
    c1 = np.empty(3)
    for k in range(3):
        c1[k] = (
            rot[k, 0] * v1[:, 0].mean()
            + rot[k, 1] * v1[:, 1].mean()
            + rot[k, 2] * v1[:, 2].mean()
            + t[k]
        )
    d = np.empty(3)
    d[0] = v0[:, 0].mean() - c1[0]
    d[1] = v0[:, 1].mean() - c1[1]
    d[2] = v0[:, 2].mean() - c1[2]
    if d @ d < 1e-18:
        d[0] = 1.0
    a = _support3(v0, r0, v1, r1, rot, t, d)
    simplex = np.zeros((4, 3))
    simplex[0] = a
    npts = 1
    d = -a.copy()
    for _ in range(128):
        dn = np.sqrt(d @ d)
        if dn < 1e-12:
            return True  # origin sits on the current simplex feature
        a = _support3(v0, r0, v1, r1, rot, t, d)
        if (a @ d) / dn < -CONTACT_TOL:
            return False
        duplicate = False
        for i in range(npts):
            diff = simplex[i] - a
            if diff @ diff < 1e-24:
                duplicate = True
        if duplicate:
            return True  # no progress possible and not separated beyond tolerance
        simplex[npts] = a
        npts += 1
        if npts == 2:
            npts = _line3(simplex, npts, d)
        elif npts == 3:
            npts = _triangle3(simplex, npts, d)
        else:
            a4 = simplex[3].copy()
            b4 = simplex[2].copy()
            c4 = simplex[1].copy()
            e4 = simplex[0].copy()
            ab = b4 - a4
            ac = c4 - a4
            ae = e4 - a4
            ao = -a4
            abc = np.cross(ab, ac)
            if abc @ ae > 0.0:
                abc = -abc
            ace = np.cross(ac, ae)
            if ace @ ab > 0.0:
                ace = -ace
            aeb = np.cross(ae, ab)
            if aeb @ ac > 0.0:
                aeb = -aeb
            if abc @ ao > 0.0:
                simplex[0] = c4
                simplex[1] = b4
                simplex[2] = a4
                npts = _triangle3(simplex, 3, d)
            elif ace @ ao > 0.0:
                simplex[0] = e4
                simplex[1] = c4
                simplex[2] = a4
                npts = _triangle3(simplex, 3, d)
            elif aeb @ ao > 0.0:
                simplex[0] = b4
                simplex[1] = e4
                simplex[2] = a4
                npts = _triangle3(simplex, 3, d)
            else:
                return True
    return True


@njit(cache=True)
def _support2(v0, r0, v1, r1, cth, sth, tx, ty, d):
    best0 = 0
    b0 = v0[0, 0] * d[0] + v0[0, 1] * d[1]
    for i in range(1, v0.shape[0]):
        s = v0[i, 0] * d[0] + v0[i, 1] * d[1]
        if s > b0:
            b0 = s
            best0 = i
    # R^T (-d)
    dx = -(cth * d[0] + sth * d[1])
    dy = -(-sth * d[0] + cth * d[1])
    best1 = 0
    b1 = v1[0, 0] * dx + v1[0, 1] * dy
    for i in range(1, v1.shape[0]):
        s = v1[i, 0] * dx + v1[i, 1] * dy
        if s > b1:
            b1 = s
            best1 = i
    w = np.empty(2)
    w[0] = v0[best0, 0] - (cth * v1[best1, 0] - sth * v1[best1, 1] + tx)
    w[1] = v0[best0, 1] - (sth * v1[best1, 0] + cth * v1[best1, 1] + ty)
    nd = np.sqrt(d[0] * d[0] + d[1] * d[1])
    if nd > 0.0:
        rr = (r0 + r1) / nd
        w[0] += rr * d[0]
        w[1] += rr * d[1]
    return w


@njit(cache=True)
def _line2(simplex, npts, d):
    a = simplex[npts - 1].copy()
    b = simplex[npts - 2].copy()
    ab = b - a
    ao = -a
    if ab @ ao > 0.0:
        simplex[0] = b
        simplex[1] = a
        d[:] = _perp_toward(ab, ao)
        return 2
    simplex[0] = a
    d[:] = ao
    return 1


@njit(cache=True)
def gjk_intersects_2d(v0, r0, v1, r1, theta, tx, ty):
    cth = np.cos(theta)
    sth = np.sin(theta)
    d = np.empty(2)
    d[0] = v0[:, 0].mean() - (cth * v1[:, 0].mean() - sth * v1[:, 1].mean() + tx)
    d[1] = v0[:, 1].mean() - (sth * v1[:, 0].mean() + cth * v1[:, 1].mean() + ty)
    if d @ d < 1e-18:
        d[0] = 1.0
    a = _support2(v0, r0, v1, r1, cth, sth, tx, ty, d)
    simplex = np.zeros((3, 2))
    simplex[0] = a
    npts = 1
    d = -a.copy()
    for _ in range(128):
        dn = np.sqrt(d @ d)
        if dn < 1e-12:
            return True
        a = _support2(v0, r0, v1, r1, cth, sth, tx, ty, d)
        if (a @ d) / dn < -CONTACT_TOL:
            return False
        duplicate = False
        for i in range(npts):
            diff = simplex[i] - a
            if diff @ diff < 1e-24:
                duplicate = True
        if duplicate:
            return True
        simplex[npts] = a
        npts += 1
        if npts == 2:
            npts = _line2(simplex, npts, d)
        else:
            a3 = simplex[2].copy()
            b3 = simplex[1].copy()
            c3 = simplex[0].copy()
            ab = b3 - a3
            ac = c3 - a3
            ao = -a3
            # outward perpendiculars of the two edges through the newest point
            n_ac = -_perp_toward(ac, ab)
            n_ab = -_perp_toward(ab, ac)
            if n_ac @ ao > 0.0:
                if ac @ ao > 0.0:
                    simplex[0] = c3
                    simplex[1] = a3
                    npts = 2
                    d[:] = _perp_toward(ac, ao)
                else:
                    simplex[0] = b3
                    simplex[1] = a3
                    npts = _line2(simplex, 2, d)
            elif n_ab @ ao > 0.0:
                simplex[0] = b3
                simplex[1] = a3
                npts = _line2(simplex, 2, d)
            else:
                return True
    return True


@njit(cache=True)
def gjk_mask_3d(v0, r0, v1, r1, rots, trans, out):
    for i in range(rots.shape[0]):
        out[i] = gjk_intersects_3d(v0, r0, v1, r1, rots[i], trans[i])


@njit(cache=True)
def gjk_mask_2d(v0, r0, v1, r1, thetas, trans, out):
    for i in range(thetas.shape[0]):
        out[i] = gjk_intersects_2d(v0, r0, v1, r1, thetas[i], trans[i, 0], trans[i, 1])
