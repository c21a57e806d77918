"""Request handlers shared by the HTTP service and the CLI.

Each handler maps a validated request model to a report body; the math
lives in the core modules.  Handlers are pure functions of the request,
so identical requests yield identical bodies.
"""

from __future__ import annotations

import json
import math
from datetime import datetime, timezone

import numpy as np

from ..coset import subadditivity_slack, symmetrize_pdf
from ..entropy.pdfs import DiscretePdf, GridPdf, continuous_entropy, shannon_entropy
from ..errors import InfeasibleError
from ..geometry.bodies import functionals_2d, functionals_3d
from ..geometry.io import body_from_dict
from ..groups.finite import FiniteGroup, construct_finite_group, find_cyclic_subgroup
from ..kinematic import (
    containment,
    mc_convergence_table,
    mc_motion_volume,
    parts_entropy_obstacle,
    pkf,
)
from ..replication import ComplexityLedger, dosr, make_shape_sample, simulate_generations
from . import schemas as sc

LN2 = math.log(2.0)


def resolve_body(spec: sc.BodySpec):
    return body_from_dict(spec.to_dict())


def resolve_group(spec: sc.GroupSpec) -> FiniteGroup:
    return construct_finite_group(spec.kind, spec.n)


def resolve_subgroup(group: FiniteGroup, label: str, within=None) -> np.ndarray:
    """Map a label like 'c4' to the first cyclic subgroup of that order.

    With ``within`` set, generators are searched inside that id set
    first, so nested choices like a C2 inside a chosen C4 resolve
    deterministically.
    """
    label = label.strip().lower()
    if not label.startswith("c") or not label[1:].isdigit():
        raise ValueError(f"subgroup label must look like 'c4', got {label!r}")
    order = int(label[1:])
    if within is not None:
        try:
            return find_cyclic_subgroup(group, order, within=within)
        except ValueError:
            pass
    return find_cyclic_subgroup(group, order)


def _functionals_dict(body) -> dict[str, float]:
    if body.dim == 2:
        f = functionals_2d(body)
        return {"perimeter": f.perimeter, "area": f.area}
    f = functionals_3d(body)
    return {"volume": f.volume, "surface_area": f.surface_area, "mean_curvature": f.mean_curvature}


def run_pkf(req: sc.PkfRequest) -> sc.PkfBody:
    a, b = resolve_body(req.a), resolve_body(req.b)
    return sc.PkfBody(
        dim=a.dim,
        a=req.a,
        b=req.b,
        functionals_a=_functionals_dict(a),
        functionals_b=_functionals_dict(b),
        value=pkf(a, b),
    )


def run_containment(req: sc.ContainmentRequest) -> sc.ContainmentBody:
    part, cont = resolve_body(req.a), resolve_body(req.b)
    result = containment(part, cont)
    return sc.ContainmentBody(
        dim=part.dim,
        part=req.a,
        container=req.b,
        value=result.value,
        warning=result.warning,
        note=result.note,
    )


def run_mc(req: sc.McRequest) -> sc.McBody:
    a, b = resolve_body(req.a), resolve_body(req.b)
    est = mc_motion_volume(req.mode, a, b, req.n_samples, req.seed, req.workers)
    if req.mode == "collision":
        analytic = pkf(a, b)
        negative = False
        note = None
    else:
        result = containment(a, b)
        analytic = result.value
        negative = result.warning
        note = result.note
    ci_contains = est.contains_value(analytic)
    disagrees = abs(analytic - est.value) > 5.0 * est.std_error
    warning = negative or disagrees
    if warning and note is None:
        note = "closed-form value disagrees with the Monte Carlo estimate"
    convergence = None
    if req.convergence:
        convergence = [
            sc.ConvergenceRow(n=n, estimate=v, std_error=s)
            for n, v, s in mc_convergence_table(
                req.mode, a, b, req.convergence, req.seed, req.workers
            )
        ]
    return sc.McBody(
        mode=req.mode,
        a=req.a,
        b=req.b,
        n_samples=req.n_samples,
        seed=req.seed,
        estimate=sc.McEstimateModel(**est.__dict__),
        analytic_value=analytic,
        analytic_negative=negative,
        ci_contains_analytic=ci_contains,
        warning=warning,
        note=note,
        convergence=convergence,
    )


def run_parts_entropy(req: sc.PartsEntropyRequest) -> sc.PartsEntropyBody:
    part = resolve_body(req.part)
    cont = resolve_body(req.container)
    obstacle = resolve_body(req.obstacle) if req.obstacle is not None else None
    try:
        res = parts_entropy_obstacle(
            part,
            cont,
            obstacle,
            method=req.method,
            n_samples=req.n_samples,
            seed=req.seed,
            workers=req.workers,
            assume_no_jamming=req.assume_no_jamming,
        )
    except InfeasibleError as exc:
        return sc.PartsEntropyBody(
            status="infeasible",
            method=req.method,
            part=req.part,
            container=req.container,
            obstacle=req.obstacle,
            note=str(exc),
            diagnostics={k: float(v) for k, v in exc.details.items()},
        )
    return sc.PartsEntropyBody(
        status="ok",
        method=req.method,
        part=req.part,
        container=req.container,
        obstacle=req.obstacle,
        entropy_nats=res.entropy,
        entropy_bits=res.entropy / LN2,
        ci_low=res.ci_low,
        ci_high=res.ci_high,
        free_volume=res.free_volume,
        containment_value=res.containment_value,
        collision_value=res.collision_value,
        estimate=sc.McEstimateModel(**res.estimate.__dict__) if res.estimate else None,
        warning=res.warning,
        note=res.note,
    )


def run_entropy(req: sc.EntropyRequest) -> sc.EntropyBody:
    spec = req.pdf
    if spec.kind == "discrete":
        if spec.probs is None:
            raise ValueError("discrete pdf requires probs")
        value = shannon_entropy(DiscretePdf(np.asarray(spec.probs)))
        size = len(spec.probs)
    else:
        if spec.nodes is None or spec.weights is None or spec.values is None:
            raise ValueError("grid pdf requires nodes, weights, and values")
        pdf = GridPdf(
            np.asarray(spec.nodes), np.asarray(spec.weights), np.asarray(spec.values)
        )
        value = continuous_entropy(pdf)
        size = len(pdf)
    return sc.EntropyBody(
        kind=spec.kind,
        size=size,
        value_nats=value,
        value_bits=value / LN2,
        units=req.units,
    )


def run_theorems(req: sc.TheoremsRequest) -> sc.TheoremsBody:
    group = resolve_group(req.group)
    k_ids = resolve_subgroup(group, req.subgroup)
    h_ids = None
    if req.subgroup2 is not None:
        h_ids = resolve_subgroup(group, req.subgroup2, within=k_ids)
    variants = req.variants
    if variants is None:
        variants = ["coset"] if h_ids is None else ["coset", "double_coset", "nested"]
    rng = np.random.default_rng(req.seed)
    pdfs = rng.exponential(size=(req.n_pdfs, group.order))
    pdfs /= pdfs.sum(axis=1, keepdims=True)
    results = []
    for variant in variants:
        if variant != "coset" and h_ids is None:
            raise ValueError(f"variant {variant!r} needs subgroup2")
        slacks = np.empty(req.n_pdfs)
        for i in range(req.n_pdfs):
            f = DiscretePdf(pdfs[i])
            if variant == "coset":
                slacks[i] = subadditivity_slack(f, group, "coset", k_ids)
            elif variant == "double_coset":
                slacks[i] = subadditivity_slack(f, group, "double_coset", h_ids, k_ids)
            else:
                slacks[i] = subadditivity_slack(f, group, "nested", h_ids, k_ids)
        results.append(
            sc.TheoremVariantResult(
                variant=variant,
                min_slack=float(slacks.min()),
                mean_slack=float(slacks.mean()),
            )
        )
    overall = min(r.min_slack for r in results)
    return sc.TheoremsBody(
        group=req.group,
        group_order=group.order,
        subgroup=req.subgroup,
        subgroup_ids=[int(i) for i in k_ids],
        subgroup2=req.subgroup2,
        subgroup2_ids=[int(i) for i in h_ids] if h_ids is not None else None,
        n_pdfs=req.n_pdfs,
        seed=req.seed,
        variants=results,
        overall_min_slack=overall,
        all_nonnegative=bool(overall >= -1e-12),
    )


def run_symmetrize(req: sc.SymmetrizeRequest) -> sc.SymmetrizeBody:
    group = resolve_group(req.group)
    k_ids = resolve_subgroup(group, req.subgroup)
    if req.pdf is not None:
        probs = np.asarray(req.pdf, dtype=float)
        probs = probs / probs.sum()
    elif req.seed is not None:
        rng = np.random.default_rng(req.seed)
        probs = rng.exponential(size=group.order)
        probs /= probs.sum()
    else:
        raise ValueError("provide either an explicit pdf or a seed for a random one")
    f = DiscretePdf(probs)
    out = symmetrize_pdf(f, group, k_ids)
    s_before, s_after = shannon_entropy(f), shannon_entropy(out)
    return sc.SymmetrizeBody(
        group=req.group,
        group_order=group.order,
        subgroup=req.subgroup,
        subgroup_ids=[int(i) for i in k_ids],
        seed=req.seed,
        pdf_in=[float(p) for p in f.probs],
        pdf_out=[float(p) for p in out.probs],
        entropy_before_nats=s_before,
        entropy_after_nats=s_after,
        entropy_nondecreasing=bool(s_after >= s_before - 1e-12),
    )


def run_dosr(req: sc.DosrRequest) -> sc.DosrBody:
    ledger = ComplexityLedger(req.system_complexity, req.part_complexities, req.aggregation)
    return sc.DosrBody(
        system_complexity=ledger.system_complexity,
        part_complexities=[float(p) for p in ledger.part_complexities],
        aggregation=req.aggregation,
        aggregate_part_complexity=ledger.aggregate_part_complexity,
        value=dosr(ledger),
    )


def run_generations(req: sc.GenerationsRequest) -> sc.GenerationsBody:
    body = resolve_body(req.shape)
    if not hasattr(body, "vertices"):
        raise ValueError("generations needs a polygon or polytope shape (vertex list)")
    group = resolve_group(req.group)
    sample = make_shape_sample(body.vertices, group)
    stats = simulate_generations(
        sample,
        req.noise_sigma,
        req.generations,
        req.corrected,
        req.trials,
        req.seed,
        req.workers,
    )
    rows = [
        sc.GenerationRow(
            generation=g,
            mean_deviation=float(stats.mean_deviation[g]),
            se_deviation=float(stats.se_deviation[g]),
            mean_sq_deviation=float(stats.mean_sq_deviation[g]),
            se_sq_deviation=float(stats.se_sq_deviation[g]),
        )
        for g in range(stats.mean_deviation.size)
    ]
    return sc.GenerationsBody(
        shape=req.shape,
        group=req.group,
        noise_sigma=req.noise_sigma,
        generations=req.generations,
        trials=req.trials,
        corrected=req.corrected,
        seed=req.seed,
        per_generation=rows,
    )


def make_report(body, workers: int | None = None) -> sc.Report:
    return sc.Report(
        generated_at=datetime.now(timezone.utc).isoformat(),
        workers=workers,
        body=body,
    )


def canonical_body_bytes(report: sc.Report | dict) -> bytes:
    """Deterministic serialization of the report body (timestamp excluded)."""
    data = report.model_dump() if isinstance(report, sc.Report) else report
    return json.dumps(data["body"], sort_keys=True, separators=(",", ":")).encode()
