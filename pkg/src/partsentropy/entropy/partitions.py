"""Partitions of a measure space: measure-theoretic information and entropy."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .pdfs import zfun

VOLUME_TOL = 1e-9


@dataclass(frozen=True)
class Partition:
    """Finite partition given by normalized cell volumes.

    ``membership`` maps a point to its cell index, or to None / a
    negative index for points outside every cell (only needed for
    pointwise information queries).
    """

    cell_volumes: np.ndarray
    membership: Callable | None = None

    def __post_init__(self):
        v = np.array(self.cell_volumes, dtype=float).reshape(-1)
        if v.size == 0:
            raise ValueError("partition needs at least one cell")
        if np.any(v < 0):
            raise ValueError("cell volumes must be nonnegative")
        if abs(v.sum() - 1.0) > VOLUME_TOL:
            raise ValueError(f"cell volumes sum to {v.sum():.12g}, not 1")
        v.setflags(write=False)
        object.__setattr__(self, "cell_volumes", v)

    def __len__(self) -> int:
        return self.cell_volumes.size


def partition_entropy(part: Partition) -> float:
    """H(partition) = sum of z(V(A)) over cells, with z(0) = 0."""
    return float(np.sum(zfun(part.cell_volumes)))


def measure_information(part: Partition, x) -> float:
    """-log V(A) for the unique cell A containing x."""
    if part.membership is None:
        raise ValueError("partition has no membership function")
    idx = part.membership(x)
    if idx is None or int(idx) < 0 or int(idx) >= len(part):
        raise ValueError(f"point {x!r} lies outside every cell")
    v = float(part.cell_volumes[int(idx)])
    if v <= 0.0:
        raise ValueError(f"cell {int(idx)} has zero volume; information undefined")
    return -math.log(v)


def grid_partition_2d(x_edges, y_edges) -> Partition:
    """Axis-aligned rectangular partition of the unit square (or any box).

    Cell volumes are normalized by the total box area; membership maps a
    point to the flat cell index (row-major in x then y).
    """
    xe = np.asarray(x_edges, dtype=float)
    ye = np.asarray(y_edges, dtype=float)
    areas = np.outer(np.diff(xe), np.diff(ye)).reshape(-1)
    volumes = areas / areas.sum()
    nx, ny = len(xe) - 1, len(ye) - 1

    def membership(pt):
        px, py = float(pt[0]), float(pt[1])
        if not (xe[0] <= px <= xe[-1] and ye[0] <= py <= ye[-1]):
            return None
        i = min(int(np.searchsorted(xe, px, side="right")) - 1, nx - 1)
        j = min(int(np.searchsorted(ye, py, side="right")) - 1, ny - 1)
        return i * ny + j

    return Partition(volumes, membership)
