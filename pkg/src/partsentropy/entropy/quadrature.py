"""Gauss-Legendre quadrature grids on boxes and on the rotation groups.

SO(3) grids use ZXZ Euler angles (alpha, gamma in [0, 2pi], beta in
[0, pi]) with the bi-invariant weight sin(beta) folded into the
quadrature weights.  The polar degeneracy at beta in {0, pi} is harmless
here because the weight vanishes there; sampling never uses this chart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..groups.haar import HaarDomain, haar_volume
from .pdfs import GridPdf


def gauss_legendre(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights integrating smooth functions on [a, b]."""
    if n < 1:
        raise ValueError("need at least one quadrature node")
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


@dataclass(frozen=True)
class ProductGrid:
    """Tensor grid split into a rotation factor and a translation factor.

    ``nodes`` enumerates rotation-major pairs, so a flat value array
    reshapes to (len(rot), len(trans)).  Either factor may be trivial
    (a single node of weight 1).
    """

    rot_nodes: np.ndarray
    rot_weights: np.ndarray
    trans_nodes: np.ndarray
    trans_weights: np.ndarray

    @property
    def nodes(self) -> np.ndarray:
        nr, nt = self.rot_nodes.shape[0], self.trans_nodes.shape[0]
        left = np.repeat(self.rot_nodes, nt, axis=0)
        right = np.tile(self.trans_nodes, (nr, 1))
        return np.hstack([left, right])

    @property
    def weights(self) -> np.ndarray:
        return np.kron(self.rot_weights, self.trans_weights)


def box_grid(bounds, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensor Gauss-Legendre grid over a box given as (d, 2) bounds."""
    bounds = np.asarray(bounds, dtype=float).reshape(-1, 2)
    axes = [gauss_legendre(lo, hi, n) for lo, hi in bounds]
    nodes_1d = [a[0] for a in axes]
    weights_1d = [a[1] for a in axes]
    mesh = np.meshgrid(*nodes_1d, indexing="ij")
    nodes = np.stack([m.reshape(-1) for m in mesh], axis=1)
    weights = weights_1d[0]
    for w in weights_1d[1:]:
        weights = np.kron(weights, w)
    return nodes, weights


def so2_grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature over the planar rotation angle (volume 2*pi)."""
    x, w = gauss_legendre(-math.pi, math.pi, n)
    return x[:, None], w


def so3_grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    """ZXZ Euler grid over the rotation group with sin(beta) weight (volume 8*pi^2)."""
    alpha, wa = gauss_legendre(0.0, 2 * math.pi, n)
    beta, wb = gauss_legendre(0.0, math.pi, n)
    gamma, wg = gauss_legendre(0.0, 2 * math.pi, n)
    wb = wb * np.sin(beta)
    a, b, g = np.meshgrid(alpha, beta, gamma, indexing="ij")
    nodes = np.stack([a.reshape(-1), b.reshape(-1), g.reshape(-1)], axis=1)
    weights = np.kron(np.kron(wa, wb), wg)
    return nodes, weights


def domain_grid(domain: HaarDomain, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Flat quadrature grid over a Haar domain; columns are rotation then translation."""
    pg = domain_product_grid(domain, n)
    return pg.nodes, pg.weights


def domain_product_grid(domain: HaarDomain, n: int, n_trans: int | None = None) -> ProductGrid:
    """Rotation/translation factored grid over a Haar domain."""
    n_trans = n if n_trans is None else n_trans
    if domain.kind == "SO2":
        rn, rw = so2_grid(n)
        tn, tw = np.zeros((1, 0)), np.ones(1)
    elif domain.kind == "SO3":
        rn, rw = so3_grid(n)
        tn, tw = np.zeros((1, 0)), np.ones(1)
    elif domain.kind == "SE2":
        rn, rw = so2_grid(n)
        tn, tw = box_grid(domain.translation_box, n_trans)
    else:  # SE3
        rn, rw = so3_grid(n)
        tn, tw = box_grid(domain.translation_box, n_trans)
    return ProductGrid(rn, rw, tn, tw)


def uniform_grid_pdf(domain: HaarDomain, n: int) -> GridPdf:
    """The uniform density 1/volume on a Haar domain, on an n-refinement grid."""
    nodes, weights = domain_grid(domain, n)
    values = np.full(weights.size, 1.0 / haar_volume(domain))
    return GridPdf(nodes, weights, values, label=f"uniform:{domain.kind}")


def grid_pdf_from_density(density, nodes: np.ndarray, weights: np.ndarray, label=None) -> GridPdf:
    """Evaluate a (vectorized) density on a grid; must already be normalized.

    The density always receives nodes as an (N, d) array.
    """
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim == 1:
        nodes = nodes[:, None]
    values = np.asarray(density(nodes), dtype=float).reshape(-1)
    return GridPdf(nodes, weights, values, label=label)


def continuous_entropy_refined(density, grid_builder, n: int) -> tuple[float, float]:
    """Entropy at refinement n plus a grid-refinement error estimate.

    The estimate is the difference against the half-resolution grid, the
    usual self-consistency check when no exact value is available.
    ``grid_builder(n)`` must return (nodes, weights).
    """
    from .pdfs import continuous_entropy

    if n < 4:
        raise ValueError("refinement must be at least 4 to halve")
    fine = grid_pdf_from_density(density, *grid_builder(n))
    coarse = grid_pdf_from_density(density, *grid_builder(max(2, n // 2)))
    s_fine = continuous_entropy(fine)
    return s_fine, abs(s_fine - continuous_entropy(coarse))
