"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they complete.  Tolerances are pinned here, not configurable.
"""

import math
import time

import numpy as np
import pytest

from partsentropy.coset import subadditivity_slack, symmetrize_pdf
from partsentropy.entropy import (
    DensityMatrix,
    DiscretePdf,
    continuous_entropy,
    conditional_entropy,
    grid_partition_2d,
    kl_divergence,
    measure_information,
    partition_entropy,
    shannon_entropy,
    uniform_grid_pdf,
    von_neumann_entropy,
)
from partsentropy.geometry import Ball, Disk, box3d
from partsentropy.groups import HaarDomain, construct_finite_group, find_cyclic_subgroup
from partsentropy.kinematic import containment_2d, mc_motion_volume, parts_entropy_obstacle
from partsentropy.replication import make_shape_sample, simulate_generations
from partsentropy.service import handlers
from partsentropy.service import schemas as sc

PI = math.pi
EIGHT_PI2 = 8 * PI**2


def _criterion(num: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" -- {detail}" if detail else ""
    print(f"[ACCEPTANCE {num:02d}] {status} {name}{suffix}")
    assert ok, f"criterion {num} failed: {name}{suffix}"


def test_criterion_01_disk_pkf_identity():
    from partsentropy.kinematic import pkf_2d

    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        r0, r1 = rng.uniform(0.1, 3.0, 2)
        exact = 2 * PI * PI * (r0 + r1) ** 2
        worst = max(worst, abs(pkf_2d(Disk(r0), Disk(r1)) - exact) / exact)
    elapsed = time.perf_counter() - start
    _criterion(
        1, "disk PKF identity", worst < 1e-12 and elapsed < 1.0,
        f"max rel err {worst:.2e}, {elapsed:.3f}s",
    )


def test_criterion_02_ball_pkf_identity():
    from partsentropy.kinematic import pkf_3d

    rng = np.random.default_rng(2)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        r0, r1 = rng.uniform(0.1, 3.0, 2)
        exact = EIGHT_PI2 * (4 * PI / 3) * (r0 + r1) ** 3
        worst = max(worst, abs(pkf_3d(Ball(r0), Ball(r1)) - exact) / exact)
    elapsed = time.perf_counter() - start
    _criterion(
        2, "ball PKF identity", worst < 1e-12 and elapsed < 1.0,
        f"max rel err {worst:.2e}, {elapsed:.3f}s",
    )


def test_criterion_03_mc_vs_analytic_2d():
    start = time.perf_counter()
    covered = 0
    worst = 0.0
    for seed in range(100):
        est = mc_motion_volume("collision", Disk(1), Disk(1), 1_000_000, seed)
        covered += est.ci_low <= EIGHT_PI2 <= est.ci_high
        worst = max(worst, abs(est.value - EIGHT_PI2) / EIGHT_PI2)
    elapsed = time.perf_counter() - start
    _criterion(
        3, "MC vs analytic (2D disks)",
        worst < 0.01 and covered >= 90 and elapsed < 60.0,
        f"coverage {covered}/100, max rel err {worst:.4%}, {elapsed:.1f}s",
    )


def test_criterion_04_mc_vs_analytic_3d_cubes():
    start = time.perf_counter()
    cube = box3d(1, 1, 1)
    est = mc_motion_volume("collision", cube, cube, 1_000_000, 2024)
    exact = 88 * PI**2
    rel = abs(est.value - exact) / exact
    elapsed = time.perf_counter() - start
    _criterion(
        4, "MC vs analytic (3D cubes)", rel < 0.02 and elapsed < 120.0,
        f"estimate {est.value:.2f} vs {exact:.2f}, rel err {rel:.4%}, {elapsed:.1f}s",
    )


def test_criterion_05_containment_2d_exactness():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        r = rng.uniform(0.1, 1.0)
        big = r + rng.uniform(0.25, 3.0)
        exact = 2 * PI**2 * (big - r) ** 2
        worst = max(worst, abs(containment_2d(Disk(r), Disk(big)).value - exact) / exact)
    _criterion(5, "containment 2D exactness", worst < 1e-12, f"max rel err {worst:.2e}")


def test_criterion_06_containment_3d_discrepancy_surfaced():
    req = sc.McRequest(
        mode="containment",
        a=sc.BodySpec(dim=3, kind="ball", radius=1.0),
        b=sc.BodySpec(dim=3, kind="ball", radius=3.0),
        n_samples=1_000_000,
        seed=6,
    )
    body = handlers.run_mc(req)
    exact = 256 * PI**3 / 3
    formula = body.analytic_value
    est = body.estimate
    ok = (
        est.ci_low <= exact <= est.ci_high
        and not (est.ci_low <= formula <= est.ci_high)
        and abs(formula + exact) / exact < 1e-12
        and body.warning
    )
    _criterion(
        6, "containment 3D discrepancy surfaced", ok,
        f"CI [{est.ci_low:.1f}, {est.ci_high:.1f}] contains {exact:.1f}, "
        f"excludes formula {formula:.1f}, warning={body.warning}",
    )


def test_criterion_07_subadditivity_theorems():
    start = time.perf_counter()
    group = construct_finite_group("octahedral")
    c4 = find_cyclic_subgroup(group, 4)
    c2 = find_cyclic_subgroup(group, 2, within=c4)
    rng = np.random.default_rng(7)
    worst = math.inf
    for _ in range(1000):
        p = rng.exponential(size=group.order)
        f = DiscretePdf(p / p.sum())
        worst = min(
            worst,
            subadditivity_slack(f, group, "coset", c4),
            subadditivity_slack(f, group, "double_coset", c2, c4),
            subadditivity_slack(f, group, "nested", c2, c4),
        )
    elapsed = time.perf_counter() - start
    _criterion(
        7, "subadditivity theorems (coset/double/nested)",
        worst >= -1e-12 and elapsed < 30.0,
        f"min slack {worst:.3e}, {elapsed:.1f}s",
    )


def test_criterion_08_uniform_so3_entropy():
    pdf = uniform_grid_pdf(HaarDomain("SO3"), 32)  # 32^3 <= 64^3 nodes
    value = continuous_entropy(pdf)
    target = math.log(EIGHT_PI2)
    _criterion(
        8, "uniform SO(3) quadrature entropy",
        abs(value - target) < 1e-6,
        f"{value:.9f} vs ln(8 pi^2) = {target:.9f}",
    )


def test_criterion_09_entropy_property_suite():
    rng = np.random.default_rng(9)
    kl_ok = True
    for _ in range(1000):
        p = rng.exponential(size=12)
        q = rng.exponential(size=12)
        kl_ok &= kl_divergence(DiscretePdf(p / p.sum()), DiscretePdf(q / q.sum())) >= -1e-12

    cond_ok = True
    for _ in range(1000):
        j = rng.exponential(size=(5, 5))
        j /= j.sum()
        res = conditional_entropy(j)
        residual = (res.cond_given_second - res.cond_given_first) - (
            res.marg_first - res.marg_second
        )
        cond_ok &= abs(residual) < 1e-12

    group = construct_finite_group("octahedral")
    c4 = find_cyclic_subgroup(group, 4)
    sym_ok = True
    for _ in range(1000):
        p = rng.exponential(size=group.order)
        f = DiscretePdf(p / p.sum())
        sym_ok &= (
            shannon_entropy(symmetrize_pdf(f, group, c4)) >= shannon_entropy(f) - 1e-12
        )

    vn_ok = True
    for _ in range(50):
        p = rng.exponential(size=7)
        p /= p.sum()
        diff = abs(von_neumann_entropy(DensityMatrix(np.diag(p))) - shannon_entropy(DiscretePdf(p)))
        vn_ok &= diff < 1e-12

    part = grid_partition_2d([0, 0.5, 0.75, 1.0], [0, 0.25, 1.0])
    pts = rng.uniform(0, 1, size=(100_000, 2))
    info = np.array([measure_information(part, p) for p in pts])
    se = info.std(ddof=1) / math.sqrt(len(info))
    part_ok = abs(info.mean() - partition_entropy(part)) < 3 * se

    ok = kl_ok and cond_ok and sym_ok and vn_ok and part_ok
    _criterion(
        9, "entropy property suite", ok,
        f"kl={kl_ok} conditional={cond_ok} symmetrize={sym_ok} "
        f"von_neumann={vn_ok} partition_mc={part_ok}",
    )


def test_criterion_10_obstacle_parts_entropy():
    r, big, obs = 0.5, 4.0, 1.0
    analytic = math.log(2 * PI**2 * ((big - r) ** 2 - (obs + r) ** 2))
    res = parts_entropy_obstacle(
        Disk(r), Disk(big), Disk(obs), method="mc", n_samples=1_000_000, seed=10
    )
    se_log = res.estimate.std_error / res.estimate.value
    gap = abs(analytic - res.entropy)
    _criterion(
        10, "obstacle parts entropy (analytic vs joint MC)",
        gap <= 3 * se_log,
        f"analytic {analytic:.6f} vs MC {res.entropy:.6f}, gap {gap:.2e} <= 3*SE {3 * se_log:.2e}",
    )


def test_criterion_11_generation_simulation():
    square = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    sample = make_shape_sample(square, construct_finite_group("cyclic", 4))
    sigma, gens, trials = 0.02, 8, 1000
    un = simulate_generations(sample, sigma, gens, False, trials, seed=11)
    co = simulate_generations(sample, sigma, gens, True, trials, seed=11)
    g = np.arange(1, gens + 1)
    rms = np.sqrt(un.mean_sq_deviation[1:])
    slope = float(np.polyfit(np.log(g), np.log(rms), 1)[0])
    slope_ok = abs(slope - 0.5) < 0.1
    rate_un = float(np.polyfit(np.arange(gens + 1), un.mean_sq_deviation, 1)[0])
    rate_co = float(np.polyfit(np.arange(gens + 1), co.mean_sq_deviation, 1)[0])
    ratio = rate_un / rate_co
    ratio_ok = abs(ratio - 4.0) <= 0.3 * 4.0
    _criterion(
        11, "generation simulation", slope_ok and ratio_ok,
        f"RMS log-log slope {slope:.3f} (want 0.5 +- 0.1), "
        f"variance reduction x{ratio:.2f} (want 4 +- 30%)",
    )


def test_criterion_12_mc_determinism_serial_vs_parallel():
    disk = sc.BodySpec(dim=2, kind="disk", radius=1.0)
    ball1 = sc.BodySpec(dim=3, kind="ball", radius=1.0)
    ball3 = sc.BodySpec(dim=3, kind="ball", radius=3.0)
    square = sc.BodySpec(
        dim=2, kind="polygon", vertices=[[1, 0], [0, 1], [-1, 0], [0, -1]]
    )
    cases = [
        (
            handlers.run_mc,
            lambda w: sc.McRequest(
                mode="collision", a=disk, b=disk, n_samples=200_000, seed=12, workers=w
            ),
        ),
        (
            handlers.run_mc,
            lambda w: sc.McRequest(
                mode="containment", a=ball1, b=ball3, n_samples=200_000, seed=12, workers=w
            ),
        ),
        (
            handlers.run_parts_entropy,
            lambda w: sc.PartsEntropyRequest(
                part=sc.BodySpec(dim=2, kind="disk", radius=0.5),
                container=sc.BodySpec(dim=2, kind="disk", radius=4.0),
                obstacle=disk,
                method="mc",
                n_samples=200_000,
                seed=12,
                workers=w,
            ),
        ),
        (
            handlers.run_generations,
            lambda w: sc.GenerationsRequest(
                shape=square,
                group=sc.GroupSpec(kind="cyclic", n=4),
                noise_sigma=0.02,
                generations=5,
                trials=200,
                corrected=True,
                seed=12,
                workers=w,
            ),
        ),
    ]
    ok = True
    names = []
    for handler, make_req in cases:
        serial = handlers.make_report(handler(make_req(1)), workers=1)
        parallel = handlers.make_report(handler(make_req(8)), workers=8)
        same = handlers.canonical_body_bytes(serial) == handlers.canonical_body_bytes(parallel)
        names.append(f"{serial.body.analysis}:{'ok' if same else 'DIFF'}")
        ok &= same
    _criterion(12, "MC determinism serial vs 8-way parallel", ok, ", ".join(names))
