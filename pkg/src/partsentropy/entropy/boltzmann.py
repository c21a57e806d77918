"""Configurational Boltzmann densities over coordinate grids.

The momentum integral of an equilibrium phase-space density is taken as
already done analytically: what remains is f(q) ~ exp(-beta V(q)) viewed
as a density with respect to the mass-weighted measure |M(q)|^(1/2) dq.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .pdfs import GridPdf


@dataclass(frozen=True)
class BoltzmannSystem:
    """Potential, optional mass-determinant weight, and inverse temperature."""

    potential: Callable
    beta: float
    mass_det_sqrt: Callable | None = None

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive")


def _measure_weights(system: BoltzmannSystem, nodes: np.ndarray, base_weights: np.ndarray):
    if system.mass_det_sqrt is None:
        m = np.ones(base_weights.size)
    else:
        m = np.asarray(system.mass_det_sqrt(nodes), dtype=float).reshape(-1)
        if np.any(m < 0):
            raise ValueError("|M(q)|^(1/2) must be nonnegative")
    return base_weights * m


def boltzmann_partition_function(
    system: BoltzmannSystem, nodes: np.ndarray, base_weights: np.ndarray
) -> float:
    """Normalizing constant Z = integral exp(-beta V) |M|^(1/2) dq on the grid."""
    nodes = np.asarray(nodes, dtype=float)
    base_weights = np.asarray(base_weights, dtype=float).reshape(-1)
    v = np.asarray(system.potential(nodes), dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("potential is not finite on the grid")
    return float(_measure_weights(system, nodes, base_weights) @ np.exp(-system.beta * v))


def boltzmann_configurational_pdf(
    system: BoltzmannSystem, nodes: np.ndarray, base_weights: np.ndarray
) -> GridPdf:
    """Normalized exp(-beta V(q)) as a GridPdf over the mass-weighted measure.

    The returned weights are base quadrature weights times |M(q)|^(1/2),
    so its entropy is the configurational entropy of the system.
    """
    nodes = np.asarray(nodes, dtype=float)
    base_weights = np.asarray(base_weights, dtype=float).reshape(-1)
    v = np.asarray(system.potential(nodes), dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("potential is not finite on the grid")
    weights = _measure_weights(system, nodes, base_weights)
    unnorm = np.exp(-system.beta * (v - v.min()))  # shift for overflow safety
    z_shifted = float(weights @ unnorm)
    if not z_shifted > 0:
        raise ValueError("density is not normalizable on this grid (all weights zero)")
    return GridPdf(nodes, weights, unnorm / z_shifted, label="boltzmann")
