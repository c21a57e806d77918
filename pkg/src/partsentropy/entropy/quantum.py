"""Von Neumann entropy of real symmetric density matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pdfs import zfun

TRACE_TOL = 1e-12
EIG_TOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Real symmetric matrix with unit trace and nonnegative spectrum.

    Eigenvalues in [-1e-12, 0) are clipped to zero to absorb round-off.
    """

    p: np.ndarray
    eigenvalues: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise ValueError("density matrix must be square")
        if np.max(np.abs(p - p.T)) > TRACE_TOL:
            raise ValueError("density matrix must be symmetric")
        if abs(np.trace(p) - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {np.trace(p):.17g}, not 1")
        eig = np.linalg.eigvalsh(p)
        if eig.min() < -EIG_TOL:
            raise ValueError(f"negative eigenvalue {eig.min():.3e} beyond tolerance")
        eig = np.clip(eig, 0.0, None)
        p.setflags(write=False)
        eig.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "eigenvalues", eig)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-tr(P log P) via the eigenvalues; zero eigenvalues contribute nothing."""
    return float(np.sum(zfun(rho.eigenvalues)))
