"""Discrete and grid probability densities and their entropy functionals.

All entropies are in nats.  The convention 0*log(0) = 0 is applied
uniformly through :func:`zfun`, the per-cell entropy contribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DISCRETE_NORM_TOL = 1e-12
GRID_NORM_TOL = 1e-6


def zfun(phi):
    """Per-cell entropy term: -phi*log(phi) for phi > 0, zero at phi = 0."""
    phi = np.asarray(phi, dtype=float)
    if np.any(phi < 0):
        raise ValueError("negative mass passed to the entropy kernel")
    out = np.zeros_like(phi)
    mask = phi > 0
    out[mask] = -phi[mask] * np.log(phi[mask])
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class DiscretePdf:
    """Probability vector over a finite event set."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float).reshape(-1)
        if p.size == 0:
            raise ValueError("pdf must have at least one event")
        if np.any(p < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > DISCRETE_NORM_TOL:
            raise ValueError(f"probabilities sum to {p.sum():.17g}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    def __len__(self) -> int:
        return self.probs.size

    @classmethod
    def uniform(cls, n: int) -> "DiscretePdf":
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def delta(cls, n: int, i: int = 0) -> "DiscretePdf":
        p = np.zeros(n)
        p[i] = 1.0
        return cls(p)


@dataclass(frozen=True)
class GridPdf:
    """Density sampled on quadrature nodes; the weights carry the measure.

    ``sum(values * weights)`` must be 1 (to 1e-6): values are densities,
    not cell masses, so entropy is the quadrature sum of -f log f.
    """

    nodes: np.ndarray
    weights: np.ndarray
    values: np.ndarray
    label: str | None = None

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        if nodes.ndim == 1:
            nodes = nodes[:, None]
        weights = np.array(self.weights, dtype=float).reshape(-1)
        values = np.array(self.values, dtype=float).reshape(-1)
        if not (nodes.shape[0] == weights.size == values.size):
            raise ValueError("nodes, weights, values must have matching length")
        if np.any(weights < 0):
            raise ValueError("quadrature weights must be nonnegative")
        if np.any(values < 0):
            raise ValueError("density values must be nonnegative")
        total = float(values @ weights)
        if abs(total - 1.0) > GRID_NORM_TOL:
            raise ValueError(f"density integrates to {total:.9g}, not 1")
        for a in (nodes, weights, values):
            a.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size


def self_information(p: float) -> float:
    """-log p for an event probability p in (0, 1]."""
    if not (0.0 < p <= 1.0):
        raise ValueError(f"event probability must be in (0, 1], got {p}")
    return -math.log(p)


def shannon_entropy(pdf: DiscretePdf) -> float:
    """Average self-information, -sum p_i log p_i."""
    return float(np.sum(zfun(pdf.probs)))


def continuous_entropy(pdf: GridPdf) -> float:
    """Quadrature approximation of -integral f log f dmu."""
    return float(pdf.weights @ zfun(pdf.values))


def kl_divergence(p, q) -> float:
    """Relative entropy D(p || q); q must dominate p on its support."""
    if isinstance(p, DiscretePdf) and isinstance(q, DiscretePdf):
        if len(p) != len(q):
            raise ValueError("pdfs have different sizes")
        pv, qv, w = p.probs, q.probs, None
    elif isinstance(p, GridPdf) and isinstance(q, GridPdf):
        if len(p) != len(q) or not np.allclose(p.nodes, q.nodes) or not np.allclose(
            p.weights, q.weights
        ):
            raise ValueError("grid pdfs are not on the same grid")
        pv, qv, w = p.values, q.values, p.weights
    else:
        raise ValueError("kl_divergence needs two pdfs of the same kind")
    support = pv > 0
    dead = support & (qv <= 0)
    if np.any(dead):
        idx = int(np.argmax(dead))
        raise ValueError(f"absolute continuity violated: q is zero at cell {idx} where p > 0")
    terms = pv[support] * np.log(pv[support] / qv[support])
    if w is None:
        return float(terms.sum())
    return float(w[support] @ terms)


@dataclass(frozen=True)
class ConditionalEntropies:
    """Direct-summation conditional and marginal entropies of a joint pdf.

    ``cond_given_second`` is H(X1 | X2) and ``cond_given_first`` is
    H(X2 | X1); they obey H(X1|X2) - H(X2|X1) = H(X1) - H(X2).
    """

    cond_given_second: float
    cond_given_first: float
    marg_first: float
    marg_second: float


def conditional_entropy(joint: np.ndarray) -> ConditionalEntropies:
    """Conditional and marginal entropies of a joint pdf over index pairs."""
    j = np.asarray(joint, dtype=float)
    if j.ndim != 2:
        raise ValueError("joint pdf must be a 2D array over index pairs")
    if np.any(j < 0):
        raise ValueError("joint probabilities must be nonnegative")
    if abs(j.sum() - 1.0) > DISCRETE_NORM_TOL:
        raise ValueError(f"joint pdf sums to {j.sum():.17g}, not 1")
    p1 = j.sum(axis=1)
    p2 = j.sum(axis=0)
    mask = j > 0
    ii, jj = np.nonzero(mask)
    pij = j[mask]
    h1_given_2 = float(-(pij * np.log(pij / p2[jj])).sum())
    h2_given_1 = float(-(pij * np.log(pij / p1[ii])).sum())
    return ConditionalEntropies(
        cond_given_second=h1_given_2,
        cond_given_first=h2_given_1,
        marg_first=float(np.sum(zfun(p1))),
        marg_second=float(np.sum(zfun(p2))),
    )


def convolve_finite(f1: DiscretePdf, f2: DiscretePdf, group) -> DiscretePdf:
    """Group convolution (f1 * f2)(g) = sum_h f1(h) f2(h^-1 g)."""
    n = group.order
    if len(f1) != n or len(f2) != n:
        raise ValueError("pdf size does not match the group order")
    shifted = f2.probs[group.table[group.inverses, :]]  # [h, g] -> f2(h^-1 g)
    return DiscretePdf(f1.probs @ shifted)


def discretize_density(density, lo: float, hi: float, n_bins: int, n_sub: int = 16) -> DiscretePdf:
    """Bin a 1D density on [lo, hi] into cell masses by per-bin quadrature."""
    from .quadrature import gauss_legendre

    edges = np.linspace(lo, hi, n_bins + 1)
    masses = np.empty(n_bins)
    for i in range(n_bins):
        x, w = gauss_legendre(edges[i], edges[i + 1], n_sub)
        masses[i] = float(w @ density(x))
    return DiscretePdf(masses / masses.sum())
