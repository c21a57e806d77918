"""Haar-uniform sampling and volumes for SO(2), SO(3), SE(2), SE(3).

Rotations are drawn exactly uniformly: SO(2) by a uniform angle on
(-pi, pi], SO(3) by normalized 4D Gaussians (uniform unit quaternions),
which avoids the Euler-angle degeneracy at beta in {0, pi}.  The motion
groups are not compact, so SE(n) domains carry a mandatory translation
box and the group volume is rotation volume times box volume.

Sampling is sharded: a sample stream for ``(seed, count)`` is defined as
the concatenation of fixed-size shards, each driven by an independent
child of ``SeedSequence(seed)``.  Parallel workers therefore reproduce
the serial stream bit for bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .rigid import RigidMotion2D, RigidMotion3D, quaternions_to_matrices

SHARD_SIZE = 1 << 16

ROTATION_VOLUMES = {"SO2": 2 * math.pi, "SO3": 8 * math.pi**2}
_KINDS = ("SO2", "SO3", "SE2", "SE3")


@dataclass(frozen=True)
class HaarDomain:
    """A sampling/integration domain on one of the supported motion groups.

    ``translation_box`` is a (d, 2) array of [low, high] bounds, required
    for the SE kinds.  SO(3) quadrature uses the ZXZ Euler convention with
    weight sin(beta); sampling never goes through Euler angles.
    """

    kind: str
    translation_box: np.ndarray | None = None

    def __post_init__(self):
        kind = self.kind.upper().replace("(", "").replace(")", "")
        if kind not in _KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}; expected one of {_KINDS}")
        object.__setattr__(self, "kind", kind)
        if kind.startswith("SE"):
            if self.translation_box is None:
                raise ValueError(f"{kind} is not compact: a translation box is required")
            d = int(kind[-1])
            box = np.array(self.translation_box, dtype=float).reshape(d, 2)
            if not np.all(np.isfinite(box)):
                raise ValueError("translation box must be finite")
            if np.any(box[:, 1] < box[:, 0]):
                raise ValueError("translation box has high < low")
            box.setflags(write=False)
            object.__setattr__(self, "translation_box", box)
        elif self.translation_box is not None:
            raise ValueError(f"{kind} does not take a translation box")

    @property
    def dim(self) -> int:
        return int(self.kind[-1])

    @property
    def rotation_volume(self) -> float:
        return ROTATION_VOLUMES["SO" + self.kind[-1]]

    @property
    def box_volume(self) -> float:
        if self.translation_box is None:
            return 1.0
        return float(np.prod(self.translation_box[:, 1] - self.translation_box[:, 0]))


def haar_volume(domain: HaarDomain) -> float:
    """Total group volume: 2*pi (SO2), 8*pi^2 (SO3), times box volume for SE(n)."""
    return domain.rotation_volume * domain.box_volume


@dataclass(frozen=True)
class MotionSamples:
    """Array-of-samples form of a batch of rigid motions.

    2D: ``angles`` (n,); 3D: ``matrices`` (n, 3, 3).  ``translations`` is
    (n, d) and identically zero for the compact kinds.
    """

    kind: str
    translations: np.ndarray
    angles: np.ndarray | None = None
    matrices: np.ndarray | None = None

    def __len__(self) -> int:
        return self.translations.shape[0]


def sample_shard(domain: HaarDomain, seedseq: np.random.SeedSequence, count: int) -> MotionSamples:
    rng = np.random.default_rng(seedseq)
    d = domain.dim
    if d == 2:
        # negate a draw from [-pi, pi) so angles land in (-pi, pi]
        angles = -rng.uniform(-math.pi, math.pi, count)
        mats = None
    else:
        quats = rng.normal(size=(count, 4))
        mats = quaternions_to_matrices(quats)
        angles = None
    if domain.translation_box is not None:
        lo = domain.translation_box[:, 0]
        hi = domain.translation_box[:, 1]
        trans = rng.uniform(lo, hi, size=(count, d))
    else:
        trans = np.zeros((count, d))
    return MotionSamples(domain.kind, trans, angles, mats)


def sample_motion_arrays(
    domain: HaarDomain, rng_seed: int, count: int, workers: int = 1
) -> MotionSamples:
    """Haar-uniform motions as arrays, deterministic in (rng_seed, count)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    n_shards = (count + SHARD_SIZE - 1) // SHARD_SIZE
    children = np.random.SeedSequence(rng_seed).spawn(n_shards)
    sizes = [min(SHARD_SIZE, count - i * SHARD_SIZE) for i in range(n_shards)]
    if workers > 1 and n_shards > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(lambda args: sample_shard(domain, *args), zip(children, sizes)))
    else:
        shards = [sample_shard(domain, ss, m) for ss, m in zip(children, sizes)]
    trans = np.concatenate([s.translations for s in shards])
    angles = np.concatenate([s.angles for s in shards]) if shards[0].angles is not None else None
    mats = np.concatenate([s.matrices for s in shards]) if shards[0].matrices is not None else None
    return MotionSamples(domain.kind, trans, angles, mats)


def haar_sample(domain: HaarDomain, rng_seed: int, count: int, workers: int = 1):
    """Haar-uniform rigid motions (rotation part uniform, translations in the box)."""
    arrays = sample_motion_arrays(domain, rng_seed, count, workers)
    if domain.dim == 2:
        return [
            RigidMotion2D(tx, ty, th)
            for (tx, ty), th in zip(arrays.translations, arrays.angles)
        ]
    return [RigidMotion3D(r, t) for r, t in zip(arrays.matrices, arrays.translations)]


def iter_shards(seed: int, count: int):
    """Yield (SeedSequence, shard_size) pairs for the canonical shard layout."""
    n_shards = (count + SHARD_SIZE - 1) // SHARD_SIZE
    children = np.random.SeedSequence(seed).spawn(n_shards)
    for i, child in enumerate(children):
        yield child, min(SHARD_SIZE, count - i * SHARD_SIZE)
