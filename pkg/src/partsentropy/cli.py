"""Command-line front end: a thin client over the service handlers.

Each subcommand builds the same request model the HTTP endpoint accepts,
runs it (in process by default, or against a running service with
``--server``), and writes a JSON report.  Exit codes: 0 success, 1 usage
or validation error, 2 infeasible result (e.g. nonpositive free volume).

The report envelope is {schema_version, generated_at, workers, body};
everything determinism-bearing lives in ``body``, so reruns with the
same seed produce byte-identical bodies for any worker count.  Set
``PARTSENTROPY_OUTDIR`` to change where reports land by default.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import urllib.request
from pathlib import Path

from .errors import GeometryError
from .geometry.io import load_geometry  # re-exported: the CLI's file loading surface
from .geometry.io import body_to_dict
from .service import handlers
from .service import schemas as sc

LN2 = math.log(2.0)

_HANDLERS = {
    "pkf": (sc.PkfRequest, handlers.run_pkf, "/pkf"),
    "containment": (sc.ContainmentRequest, handlers.run_containment, "/containment"),
    "mc": (sc.McRequest, handlers.run_mc, "/mc"),
    "parts-entropy": (sc.PartsEntropyRequest, handlers.run_parts_entropy, "/parts-entropy"),
    "entropy": (sc.EntropyRequest, handlers.run_entropy, "/entropy"),
    "theorems": (sc.TheoremsRequest, handlers.run_theorems, "/theorems"),
    "symmetrize": (sc.SymmetrizeRequest, handlers.run_symmetrize, "/symmetrize"),
    "dosr": (sc.DosrRequest, handlers.run_dosr, "/dosr"),
    "generations": (sc.GenerationsRequest, handlers.run_generations, "/generations"),
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for infeasibility here
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _body_spec(path: str) -> sc.BodySpec:
    return sc.BodySpec(**body_to_dict(load_geometry(path)))


def _group_spec(args) -> sc.GroupSpec:
    return sc.GroupSpec(kind=args.group, n=args.group_n)


def _add_common(p: _Parser) -> None:
    p.add_argument("--config", help="JSON file with the full request (overrides other input flags)")
    p.add_argument("--out", help="report path (default: <outdir>/<subcommand>_report.json)")
    p.add_argument("--server", help="base URL of a running service; POST there instead of running locally")
    p.add_argument("--units", choices=["nats", "bits"], default="nats", help="units for printed entropies")


def build_parser() -> _Parser:
    parser = _Parser(prog="partsentropy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand")

    p = sub.add_parser("pkf", parents=[], help="collision motion volume of two convex bodies", add_help=True)
    p.add_argument("--a", help="geometry file of the first body")
    p.add_argument("--b", help="geometry file of the second body")
    _add_common(p)

    p = sub.add_parser("containment", help="free-motion volume of a part inside a container")
    p.add_argument("--a", help="geometry file of the moving part")
    p.add_argument("--b", help="geometry file of the container")
    _add_common(p)

    p = sub.add_parser("mc", help="Monte Carlo motion-volume estimate")
    p.add_argument("--mode", choices=["collision", "containment"])
    p.add_argument("--a", help="geometry file of the moving body")
    p.add_argument("--b", help="geometry file of the fixed body / container")
    p.add_argument("--n", type=int, help="number of samples (>= 1000)")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--convergence", help="comma-separated sample sizes for a CSV convergence table")
    p.add_argument("--csv", help="path for the convergence CSV (default: alongside the report)")
    _add_common(p)

    p = sub.add_parser("parts-entropy", help="entropy of a part in a container, optionally with an obstacle")
    p.add_argument("--part")
    p.add_argument("--container")
    p.add_argument("--obstacle")
    p.add_argument("--method", choices=["analytic", "mc"], default="analytic")
    p.add_argument("--no-jamming", action="store_true", dest="no_jamming",
                   help="assert the part cannot jam (required for analytic mode with an obstacle)")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("entropy", help="entropy of a pdf file (discrete or grid)")
    p.add_argument("--pdf", help="pdf JSON file")
    _add_common(p)

    p = sub.add_parser("theorems", help="entropy subadditivity slack over random pdfs")
    p.add_argument("--group", choices=["cyclic", "dihedral", "tetrahedral", "octahedral", "icosahedral"])
    p.add_argument("--group-n", type=int, help="order parameter for cyclic/dihedral")
    p.add_argument("--subgroup", help="cyclic subgroup label, e.g. c4")
    p.add_argument("--subgroup2", help="second subgroup label for double-coset/nested variants")
    p.add_argument("--variants", help="comma-separated subset of coset,double_coset,nested")
    p.add_argument("--pdfs", type=int, default=1000)
    p.add_argument("--seed", type=int)
    _add_common(p)

    p = sub.add_parser("symmetrize", help="average a pdf over a subgroup")
    p.add_argument("--group", choices=["cyclic", "dihedral", "tetrahedral", "octahedral", "icosahedral"])
    p.add_argument("--group-n", type=int)
    p.add_argument("--subgroup")
    p.add_argument("--pdf", help="pdf JSON file (discrete); omit to draw a random pdf from --seed")
    p.add_argument("--seed", type=int)
    _add_common(p)

    p = sub.add_parser("dosr", help="degree of self-replication")
    p.add_argument("--system", type=float, help="system complexity")
    p.add_argument("--parts", help="comma-separated part complexities")
    p.add_argument("--mode", choices=["max", "mean"], default="max")
    _add_common(p)

    p = sub.add_parser("generations", help="manufacturing error propagation over generations")
    p.add_argument("--shape", help="geometry file (polygon/polytope) of the nominal part")
    p.add_argument("--group", choices=["cyclic", "dihedral", "tetrahedral", "octahedral", "icosahedral"])
    p.add_argument("--group-n", type=int)
    p.add_argument("--sigma", type=float, help="per-generation noise std")
    p.add_argument("--generations", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--corrected", action="store_true", help="apply the symmetry parity check each generation")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", help="path for the per-generation trace CSV")
    _add_common(p)

    return parser


def _require(args, names) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_"), None) is None]
    if missing:
        raise ValueError(f"missing required flags: {', '.join('--' + n for n in missing)}")


def build_request(args):
    """Turn parsed flags (or the --config file) into the request model."""
    model = _HANDLERS[args.subcommand][0]
    if args.config:
        return model(**json.loads(Path(args.config).read_text()))
    if args.subcommand == "pkf":
        _require(args, ["a", "b"])
        return sc.PkfRequest(a=_body_spec(args.a), b=_body_spec(args.b))
    if args.subcommand == "containment":
        _require(args, ["a", "b"])
        return sc.ContainmentRequest(a=_body_spec(args.a), b=_body_spec(args.b))
    if args.subcommand == "mc":
        _require(args, ["mode", "a", "b", "n", "seed"])
        conv = [int(x) for x in args.convergence.split(",")] if args.convergence else None
        return sc.McRequest(
            mode=args.mode, a=_body_spec(args.a), b=_body_spec(args.b),
            n_samples=args.n, seed=args.seed, workers=args.workers, convergence=conv,
        )
    if args.subcommand == "parts-entropy":
        _require(args, ["part", "container"])
        if args.method == "mc":
            _require(args, ["n", "seed"])
        return sc.PartsEntropyRequest(
            part=_body_spec(args.part),
            container=_body_spec(args.container),
            obstacle=_body_spec(args.obstacle) if args.obstacle else None,
            method=args.method,
            assume_no_jamming=args.no_jamming,
            n_samples=args.n,
            seed=args.seed,
            workers=args.workers,
        )
    if args.subcommand == "entropy":
        _require(args, ["pdf"])
        data = json.loads(Path(args.pdf).read_text())
        return sc.EntropyRequest(pdf=sc.PdfSpec(**data), units=args.units)
    if args.subcommand == "theorems":
        _require(args, ["group", "subgroup", "seed"])
        variants = args.variants.split(",") if args.variants else None
        return sc.TheoremsRequest(
            group=_group_spec(args), subgroup=args.subgroup, subgroup2=args.subgroup2,
            variants=variants, n_pdfs=args.pdfs, seed=args.seed,
        )
    if args.subcommand == "symmetrize":
        _require(args, ["group", "subgroup"])
        probs = None
        if args.pdf:
            data = json.loads(Path(args.pdf).read_text())
            probs = data["probs"] if isinstance(data, dict) else data
        return sc.SymmetrizeRequest(
            group=_group_spec(args), subgroup=args.subgroup, pdf=probs, seed=args.seed,
        )
    if args.subcommand == "dosr":
        _require(args, ["system", "parts"])
        return sc.DosrRequest(
            system_complexity=args.system,
            part_complexities=[float(x) for x in args.parts.split(",")],
            aggregation=args.mode,
        )
    if args.subcommand == "generations":
        _require(args, ["shape", "group", "sigma", "generations", "trials", "seed"])
        return sc.GenerationsRequest(
            shape=_body_spec(args.shape), group=_group_spec(args),
            noise_sigma=args.sigma, generations=args.generations, trials=args.trials,
            corrected=args.corrected, seed=args.seed, workers=args.workers,
        )
    raise ValueError(f"unhandled subcommand {args.subcommand!r}")


def _post_to_server(base_url: str, endpoint: str, request) -> dict:
    payload = request.model_dump_json(exclude_none=True).encode()
    req = urllib.request.Request(
        base_url.rstrip("/") + endpoint, data=payload,
        headers={"Content-Type": "application/json"}, method="POST",
    )
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read().decode())


def _report_path(args) -> Path:
    if args.out:
        return Path(args.out)
    outdir = Path(os.environ.get("PARTSENTROPY_OUTDIR", "."))
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir / f"{args.subcommand.replace('-', '_')}_report.json"


def _write_convergence_csv(path: Path, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "estimate", "std_error"])
        for row in rows:
            writer.writerow([row["n"], repr(row["estimate"]), repr(row["std_error"])])


def _write_trace_csv(path: Path, body: dict) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["generation", "mean_deviation", "se", "corrected"])
        for row in body["per_generation"]:
            writer.writerow(
                [row["generation"], repr(row["mean_deviation"]), repr(row["se_deviation"]),
                 body["corrected"]]
            )


def _summary(body: dict, units: str) -> str:
    kind = body["analysis"]
    if kind == "pkf":
        return f"pkf motion volume: {body['value']:.6f}"
    if kind == "containment":
        note = " (warning: outside formula validity)" if body["warning"] else ""
        return f"containment motion volume: {body['value']:.6f}{note}"
    if kind == "mc":
        e = body["estimate"]
        line = (
            f"mc {body['mode']}: {e['value']:.6f} +- {e['std_error']:.6f} "
            f"(95% CI [{e['ci_low']:.6f}, {e['ci_high']:.6f}], analytic {body['analytic_value']:.6f})"
        )
        if body["warning"]:
            line += " [warning: formula value outside agreement]"
        return line
    if kind == "parts_entropy":
        if body["status"] == "infeasible":
            return f"parts entropy: infeasible ({body['note']})"
        val = body["entropy_nats"] if units == "nats" else body["entropy_bits"]
        return f"parts entropy: {val:.6f} {units}"
    if kind == "entropy":
        val = body["value_nats"] if units == "nats" else body["value_bits"]
        return f"entropy: {val:.9f} {units}"
    if kind == "theorems":
        return (
            f"min subadditivity slack: {body['overall_min_slack']:.3e} "
            f"({'all nonnegative' if body['all_nonnegative'] else 'VIOLATION'})"
        )
    if kind == "symmetrize":
        before = body["entropy_before_nats"]
        after = body["entropy_after_nats"]
        if units == "bits":
            before, after = before / LN2, after / LN2
        return f"entropy before {before:.6f} -> after {after:.6f} {units}"
    if kind == "dosr":
        return f"degree of self-replication: {body['value']:.6f}"
    if kind == "generations":
        last = body["per_generation"][-1]
        return (
            f"generation {last['generation']} mean deviation "
            f"{last['mean_deviation']:.6g} +- {last['se_deviation']:.2g}"
        )
    return kind


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.subcommand is None:
        parser.print_help()
        return 1
    try:
        request = build_request(args)
        model, handler, endpoint = _HANDLERS[args.subcommand]
        if args.server:
            report = _post_to_server(args.server, endpoint, request)
        else:
            workers = getattr(request, "workers", None)
            report = handlers.make_report(handler(request), workers=workers).model_dump()
    except (GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    path = _report_path(args)
    path.write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    body = report["body"]
    print(_summary(body, args.units))
    print(f"report written to {path}")
    if args.subcommand == "mc" and body.get("convergence"):
        csv_path = Path(args.csv) if args.csv else path.with_suffix(".csv")
        _write_convergence_csv(csv_path, body["convergence"])
        print(f"convergence table written to {csv_path}")
    if args.subcommand == "generations" and args.csv:
        _write_trace_csv(Path(args.csv), body)
        print(f"trace written to {args.csv}")
    if body.get("analysis") == "parts_entropy" and body.get("status") == "infeasible":
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
