"""Degree-of-self-replication metric and symmetry-based error correction.

A shape with a known finite rotation symmetry can use that symmetry as a
parity check: averaging each vertex over its orbit, pulled back through
the group action, projects the shape onto the exactly-symmetric subspace.
Applied after every manufacturing generation this squashes the component
of the accumulated error outside that subspace.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .groups.finite import FiniteGroup

ORBIT_TOL = 1e-8


@dataclass(frozen=True)
class ComplexityLedger:
    """System complexity and per-part complexities, with an aggregation mode."""

    system_complexity: float
    part_complexities: np.ndarray
    aggregation: str = "max"

    def __post_init__(self):
        parts = np.array(self.part_complexities, dtype=float).reshape(-1)
        if parts.size == 0:
            raise ValueError("part complexity list cannot be empty")
        if np.any(parts < 0) or self.system_complexity < 0:
            raise ValueError("complexities must be nonnegative")
        if self.aggregation not in ("max", "mean"):
            raise ValueError("aggregation must be 'max' or 'mean'")
        parts.setflags(write=False)
        object.__setattr__(self, "part_complexities", parts)
        object.__setattr__(self, "system_complexity", float(self.system_complexity))

    @property
    def aggregate_part_complexity(self) -> float:
        if self.aggregation == "max":
            return float(self.part_complexities.max())
        return float(self.part_complexities.mean())


def dosr(ledger: ComplexityLedger) -> float:
    """Degree of self-replication: system complexity over the aggregated part complexity.

    The default aggregation is the most complicated input part.
    """
    denom = ledger.aggregate_part_complexity
    if denom <= 0:
        raise ValueError("aggregated part complexity must be positive")
    return ledger.system_complexity / denom


def _group_rotations(group: FiniteGroup, dim: int) -> np.ndarray:
    """The group's rotation matrices restricted to the shape's dimension."""
    if group.matrices is None:
        raise ValueError("shape symmetry group needs a rotation representation")
    mats = group.matrices
    if dim == 3:
        return mats
    # planar shapes need the action to stay in the xy-plane
    planar = mats[:, :2, :2]
    if (
        np.max(np.abs(mats[:, 2, :2])) > ORBIT_TOL
        or np.max(np.abs(mats[:, :2, 2])) > ORBIT_TOL
        or np.max(np.abs(mats[:, 2, 2] - 1.0)) > ORBIT_TOL
    ):
        raise ValueError("group does not act in the plane; use z-axis rotations for 2D shapes")
    return planar


def _orbit_maps(vertices: np.ndarray, rotations: np.ndarray) -> np.ndarray:
    """perm[k, i] = index of the vertex that element k sends vertex i to."""
    n_el, n_v = rotations.shape[0], vertices.shape[0]
    perms = np.empty((n_el, n_v), dtype=np.int64)
    for k, rot in enumerate(rotations):
        moved = vertices @ rot.T
        dists = np.linalg.norm(moved[:, None, :] - vertices[None, :, :], axis=2)
        target = dists.argmin(axis=1)
        if dists[np.arange(n_v), target].max() > ORBIT_TOL or len(set(target)) != n_v:
            raise ValueError(
                f"shape is not invariant under group element {k}: no vertex correspondence"
            )
        perms[k] = target
    return perms


@dataclass(frozen=True)
class ShapeSample:
    """Vertex cloud with a symmetry group and the orbit maps of the nominal shape.

    ``vertices`` may carry manufacturing noise; ``orbit_maps`` always
    refers to the nominal geometry the sample was created from.
    """

    vertices: np.ndarray
    group: FiniteGroup
    orbit_maps: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] not in (2, 3):
            raise ValueError("vertices must be (n, 2) or (n, 3)")
        maps = np.array(self.orbit_maps, dtype=np.int64)
        if maps.shape != (self.group.order, v.shape[0]):
            raise ValueError("orbit maps must be (|group|, n_vertices)")
        for k in range(maps.shape[0]):
            if len(set(int(i) for i in maps[k])) != v.shape[0]:
                raise ValueError(f"orbit labeling inconsistent: element {k} is not a permutation")
        v.setflags(write=False)
        maps.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "orbit_maps", maps)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]


def make_shape_sample(nominal_vertices, group: FiniteGroup) -> ShapeSample:
    """Build a sample from nominal geometry, deriving the orbit correspondence."""
    v = np.asarray(nominal_vertices, dtype=float)
    rotations = _group_rotations(group, v.shape[1])
    return ShapeSample(v, group, _orbit_maps(v, rotations))


def symmetrize_shape(sample: ShapeSample) -> ShapeSample:
    """Project the vertices onto the exactly symmetric subspace.

    Each vertex becomes the average of its orbit pulled back through the
    group action, v_i <- (1/|K|) sum_k R_k^-1 v_{k(i)}.  The output is
    invariant under every group element and the map is linear and
    idempotent.
    """
    rotations = _group_rotations(sample.group, sample.dim)
    v = sample.vertices
    acc = np.zeros_like(v)
    for k in range(sample.group.order):
        acc += v[sample.orbit_maps[k]] @ rotations[k]  # @ R_k equals @ (R_k^-1)^T
    return replace(sample, vertices=acc / sample.group.order)


@dataclass(frozen=True)
class GenerationStats:
    """Per-generation deviation statistics over repeated manufacturing runs.

    ``mean_deviation[g]`` is the mean RMS vertex distance from nominal at
    generation g (generation 0 is the nominal shape itself).
    """

    mean_deviation: np.ndarray
    se_deviation: np.ndarray
    mean_sq_deviation: np.ndarray
    se_sq_deviation: np.ndarray
    corrected: bool
    noise_sigma: float
    n_trials: int
    seed: int


def _run_trial(
    sample: ShapeSample,
    rotations: np.ndarray,
    noise_sigma: float,
    generations: int,
    corrected: bool,
    seedseq: np.random.SeedSequence,
) -> np.ndarray:
    rng = np.random.default_rng(seedseq)
    nominal = sample.vertices
    current = nominal.copy()
    dev = np.zeros(generations + 1)
    order = sample.group.order
    for g in range(1, generations + 1):
        current = current + rng.normal(0.0, noise_sigma, size=current.shape)
        if corrected:
            acc = np.zeros_like(current)
            for k in range(order):
                acc += current[sample.orbit_maps[k]] @ rotations[k]
            current = acc / order
        dev[g] = math.sqrt(float(np.mean(np.sum((current - nominal) ** 2, axis=1))))
    return dev


def simulate_generations(
    sample: ShapeSample,
    noise_sigma: float,
    generations: int,
    corrected: bool,
    trials: int,
    seed: int,
    workers: int = 1,
) -> GenerationStats:
    """Mould-to-casting error accumulation over generations.

    Every generation adds independent isotropic Gaussian noise to each
    vertex of the current shape and, when ``corrected``, reimposes the
    nominal symmetry as a parity check.  Each trial runs on its own RNG
    stream, so results are deterministic in (seed, trials) and identical
    for any worker count.
    """
    if generations < 1 or trials < 1:
        raise ValueError("generations and trials must be >= 1")
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be >= 0")
    rotations = _group_rotations(sample.group, sample.dim)
    children = np.random.SeedSequence(seed).spawn(trials)

    def run(child):
        return _run_trial(sample, rotations, noise_sigma, generations, corrected, child)

    if workers > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, children))
    else:
        rows = [run(child) for child in children]
    dev = np.stack(rows)  # (trials, generations+1)
    sq = dev**2
    return GenerationStats(
        mean_deviation=dev.mean(axis=0),
        se_deviation=dev.std(axis=0, ddof=1 if trials > 1 else 0) / math.sqrt(trials),
        mean_sq_deviation=sq.mean(axis=0),
        se_sq_deviation=sq.std(axis=0, ddof=1 if trials > 1 else 0) / math.sqrt(trials),
        corrected=corrected,
        noise_sigma=float(noise_sigma),
        n_trials=trials,
        seed=seed,
    )


def stats_to_csv_rows(stats: GenerationStats):
    """Rows (generation, mean_deviation, se, corrected) for the trace export."""
    return [
        (g, float(stats.mean_deviation[g]), float(stats.se_deviation[g]), stats.corrected)
        for g in range(stats.mean_deviation.size)
    ]
