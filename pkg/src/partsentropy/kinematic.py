"""Motion-volume formulas and Monte Carlo estimation over the motion groups.

The collision formulas give the measure of rigid motions placing two
convex bodies in contact, in the convention where the rotation factor
has volume 2*pi (planar) or 8*pi^2 (spatial).  The containment formulas
are reported verbatim as printed in the integral-geometry literature;
for some shape pairs (balls inside balls, for instance) the printed 3D
formula disagrees with the directly computed free-motion volume, so the
result carries a warning channel instead of a silent correction and the
Monte Carlo estimator is the arbiter.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError
from .geometry.bodies import (
    Body,
    circumradius,
    functionals_2d,
    functionals_3d,
    recentered,
    reference_point,
)
from .geometry.predicates import contains_mask, intersects_mask
from .groups.haar import HaarDomain, haar_volume, iter_shards, sample_shard

Z95 = 1.959963984540054  # two-sided 95% normal quantile
MIN_MC_SAMPLES = 1000
WILSON_MIN_HITS = 30


def pkf_2d(c0: Body, c1: Body) -> float:
    """Planar collision motion volume: 2*pi*(A0 + A1) + L0*L1."""
    if c0.dim != 2 or c1.dim != 2:
        raise ValueError("pkf_2d needs two 2D bodies")
    f0, f1 = functionals_2d(c0), functionals_2d(c1)
    return 2 * math.pi * (f0.area + f1.area) + f0.perimeter * f1.perimeter


def pkf_3d(c0: Body, c1: Body) -> float:
    """Spatial collision motion volume: 8*pi^2*(V0 + V1) + 2*pi*(A0*M1 + A1*M0)."""
    if c0.dim != 3 or c1.dim != 3:
        raise ValueError("pkf_3d needs two 3D bodies")
    f0, f1 = functionals_3d(c0), functionals_3d(c1)
    return 8 * math.pi**2 * (f0.volume + f1.volume) + 2 * math.pi * (
        f0.surface_area * f1.mean_curvature + f1.surface_area * f0.mean_curvature
    )


def pkf(c0: Body, c1: Body) -> float:
    return pkf_2d(c0, c1) if c0.dim == 2 else pkf_3d(c0, c1)


@dataclass(frozen=True)
class ContainmentResult:
    """Containment-formula value plus a validity warning channel."""

    value: float
    warning: bool
    note: str | None = None


def containment_2d(c1: Body, c2: Body) -> ContainmentResult:
    """Free-motion volume of c1 inside container c2: 2*pi*(A1 + A2) - L1*L2.

    Valid when every curvature of the moving body exceeds every curvature
    of the container; a negative value is returned as-is with a warning.
    """
    if c1.dim != 2 or c2.dim != 2:
        raise ValueError("containment_2d needs two 2D bodies")
    f1, f2 = functionals_2d(c1), functionals_2d(c2)
    value = 2 * math.pi * (f1.area + f2.area) - f1.perimeter * f2.perimeter
    if value < 0:
        return ContainmentResult(value, True, "formula value negative: outside its validity domain")
    return ContainmentResult(value, False)


def containment_3d(c1: Body, c2: Body) -> ContainmentResult:
    """Spatial containment formula 8*pi^2*(V1 + V2) - 2*pi*(A1*M2 + A2*M1), verbatim.

    Known to disagree with the exact free-motion volume for some pairs
    (e.g. ball in ball); cross-check with mc_motion_volume.
    """
    if c1.dim != 3 or c2.dim != 3:
        raise ValueError("containment_3d needs two 3D bodies")
    f1, f2 = functionals_3d(c1), functionals_3d(c2)
    value = 8 * math.pi**2 * (f1.volume + f2.volume) - 2 * math.pi * (
        f1.surface_area * f2.mean_curvature + f2.surface_area * f1.mean_curvature
    )
    if value < 0:
        return ContainmentResult(value, True, "formula value negative: outside its validity domain")
    return ContainmentResult(value, False)


def containment(c1: Body, c2: Body) -> ContainmentResult:
    return containment_2d(c1, c2) if c1.dim == 2 else containment_3d(c1, c2)


@dataclass(frozen=True)
class MotionVolumeEstimate:
    """Monte Carlo motion volume with its binomial error bars and provenance."""

    value: float
    std_error: float
    ci_low: float
    ci_high: float
    n_samples: int
    seed: int
    hit_count: int
    domain_volume: float

    def contains_value(self, x: float) -> bool:
        return self.ci_low <= x <= self.ci_high


def _wilson_interval(hits: int, n: int) -> tuple[float, float]:
    p = hits / n
    z2 = Z95 * Z95
    denom = 1.0 + z2 / n
    center = (p + z2 / (2 * n)) / denom
    half = Z95 * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom
    return center - half, center + half


def _estimate_from_hits(hits: int, n: int, volume: float, seed: int) -> MotionVolumeEstimate:
    p = hits / n
    se = volume * math.sqrt(p * (1 - p) / n)
    if hits < WILSON_MIN_HITS:
        lo, hi = _wilson_interval(hits, n)
        ci = (volume * lo, volume * hi)
    else:
        ci = (volume * p - Z95 * se, volume * p + Z95 * se)
    return MotionVolumeEstimate(volume * p, se, ci[0], ci[1], n, seed, hits, volume)


def _sampling_domain(mode: str, moving: Body, fixed: Body) -> tuple[HaarDomain, Body]:
    """Translation box guaranteed to cover every hit, centered on the fixed body.

    For collision the triangle inequality bounds hit translations by the
    sum of circumradii once the moving body is recentered on its
    reference point; for containment the moving body's reference point
    must itself land inside the container.
    """
    moving_centered = recentered(moving)
    ref = reference_point(fixed)
    if mode == "collision":
        half = circumradius(moving) + circumradius(fixed)
    else:
        half = circumradius(fixed)
    if half <= 0:
        raise ValueError("sampling box has zero volume (both bodies degenerate)")
    box = np.stack([ref - half, ref + half], axis=1)
    kind = "SE2" if moving.dim == 2 else "SE3"
    return HaarDomain(kind, box), moving_centered


def _count_hits(predicate, seed: int, n_samples: int, domain: HaarDomain, workers: int) -> int:
    shards = list(iter_shards(seed, n_samples))

    def run(args):
        child, count = args
        return int(np.count_nonzero(predicate(sample_shard(domain, child, count))))

    if workers > 1 and len(shards) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(run, shards))
    else:
        counts = [run(s) for s in shards]
    return sum(counts)


def mc_motion_volume(
    mode: str,
    a: Body,
    b: Body,
    n_samples: int,
    seed: int,
    workers: int = 1,
) -> MotionVolumeEstimate:
    """Estimate a motion volume by Haar-uniform sampling.

    ``mode='collision'`` estimates the volume of motions placing the
    moving body ``a`` in contact with the fixed body ``b``;
    ``mode='containment'`` the volume keeping ``a`` inside container
    ``b``.  Rotations are Haar-uniform, translations uniform over a box
    sized to cover every hit, so hit_fraction * domain_volume is
    unbiased.  Deterministic in (seed, n_samples) regardless of
    ``workers``; shards reduce in fixed order.
    """
    if mode not in ("collision", "containment"):
        raise ValueError("mode must be 'collision' or 'containment'")
    if n_samples < MIN_MC_SAMPLES:
        raise ValueError(f"n_samples must be >= {MIN_MC_SAMPLES}")
    if a.dim != b.dim:
        raise ValueError("bodies must have the same dimension")
    domain, moving = _sampling_domain(mode, a, b)
    volume = haar_volume(domain)
    if mode == "collision":
        predicate = lambda samples: intersects_mask(b, moving, samples)
    else:
        predicate = lambda samples: contains_mask(b, moving, samples)
    hits = _count_hits(predicate, seed, n_samples, domain, workers)
    return _estimate_from_hits(hits, n_samples, volume, seed)


def mc_convergence_table(
    mode: str, a: Body, b: Body, sample_sizes, seed: int, workers: int = 1
):
    """Rows (n, estimate, std_error) for a convergence study."""
    return [
        (int(n), est.value, est.std_error)
        for n in sample_sizes
        for est in [mc_motion_volume(mode, a, b, int(n), seed, workers)]
    ]


@dataclass(frozen=True)
class PartsEntropyResult:
    """Log free-motion volume of a part in a container, optionally with an obstacle."""

    entropy: float
    free_volume: float
    containment_value: float
    collision_value: float
    method: str
    ci_low: float | None = None
    ci_high: float | None = None
    estimate: MotionVolumeEstimate | None = None
    warning: bool = False
    note: str | None = None


def parts_entropy_obstacle(
    part: Body,
    container: Body,
    obstacle: Body | None = None,
    method: str = "analytic",
    n_samples: int | None = None,
    seed: int | None = None,
    workers: int = 1,
    assume_no_jamming: bool = False,
) -> PartsEntropyResult:
    """Entropy log(V_contain - I_obstacle) of a part moving freely in a container.

    The analytic route subtracts the obstacle collision volume from the
    containment volume, which is only exact when the part can never jam
    between obstacle and container wall; with an obstacle present the
    caller must assert that via ``assume_no_jamming``.  The MC route
    needs no such assumption: it samples motions jointly and counts
    {contained and clear of the obstacle}.
    """
    if container.dim != part.dim or (obstacle is not None and obstacle.dim != part.dim):
        raise ValueError("part, container, and obstacle must share a dimension")
    if method == "analytic":
        if obstacle is not None and not assume_no_jamming:
            raise ValueError(
                "analytic mode with an obstacle requires assume_no_jamming=True; "
                "use method='mc' when jamming cannot be excluded"
            )
        cont = containment(part, container)
        coll = pkf(obstacle, part) if obstacle is not None else 0.0
        free = cont.value - coll
        if free <= 0:
            raise InfeasibleError(
                "part cannot move clear of the obstacle: nonpositive free volume",
                details={
                    "containment_value": cont.value,
                    "collision_value": coll,
                    "free_volume": free,
                },
            )
        return PartsEntropyResult(
            entropy=math.log(free),
            free_volume=free,
            containment_value=cont.value,
            collision_value=coll,
            method="analytic",
            warning=cont.warning,
            note=cont.note,
        )
    if method != "mc":
        raise ValueError("method must be 'analytic' or 'mc'")
    if n_samples is None or seed is None:
        raise ValueError("mc mode requires n_samples and seed")
    if n_samples < MIN_MC_SAMPLES:
        raise ValueError(f"n_samples must be >= {MIN_MC_SAMPLES}")
    domain, moving = _sampling_domain("containment", part, container)
    volume = haar_volume(domain)

    def predicate(samples):
        ok = contains_mask(container, moving, samples)
        if obstacle is not None:
            ok &= ~intersects_mask(obstacle, moving, samples)
        return ok

    hits = _count_hits(predicate, seed, n_samples, domain, workers)
    est = _estimate_from_hits(hits, n_samples, volume, seed)
    if est.value <= 0:
        raise InfeasibleError(
            "no free placements found: free volume indistinguishable from zero",
            details={"hit_count": est.hit_count, "n_samples": n_samples},
        )
    cont = containment(part, container)
    return PartsEntropyResult(
        entropy=math.log(est.value),
        free_volume=est.value,
        containment_value=cont.value,
        collision_value=pkf(obstacle, part) if obstacle is not None else 0.0,
        method="mc",
        ci_low=math.log(est.ci_low) if est.ci_low > 0 else None,
        ci_high=math.log(est.ci_high),
        estimate=est,
        warning=cont.warning,
        note=cont.note,
    )
