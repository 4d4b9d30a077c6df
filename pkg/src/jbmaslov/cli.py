"""Command-line entry point: ``jbmaslov <command> ...``.

Exit codes: 0 success, 1 input error, 2 uncertified result in certified
mode, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import documents as docs
from ._linalg import TOL_CLUSTER
from .calculus import CONSTRUCTIONS, check_formula_E
from .errors import JBMaslovError, UncertifiedError
from .lagrangian import pair_report
from .maslov import MAX_REFINE, IndexReport, eigenvalue_flow, maslov_index, winding_number_det
from .spectral import relative_spectrum
from .verify import SUITES, run_suite


def _base(args, fallback) -> np.ndarray:
    if args.base:
        point = docs.load(docs.PointDocument, args.base)
        return point.to_matrix()
    return fallback


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _index_payload(rep: IndexReport) -> dict:
    return {
        "index": rep.value,
        "certified": rep.certified,
        "refinements": rep.refinements,
        "segments": [
            {"t_start": s.t_start, "t_end": s.t_end, "eps": s.eps, "k_start": s.k_start, "k_end": s.k_end}
            for s in rep.segments
        ],
    }


def _index_text(rep: IndexReport) -> str:
    lines = [str(rep.value), f"certified: {'yes' if rep.certified else 'no'}", "t_start     t_end       eps         k_start k_end"]
    for s in rep.segments:
        lines.append(f"{s.t_start:<11.6g} {s.t_end:<11.6g} {s.eps:<11.6g} {s.k_start:<7d} {s.k_end}")
    return "\n".join(lines)


def cmd_index(args) -> int:
    doc = docs.load(docs.PathDocument, args.path)
    path = doc.to_path()
    e = _base(args, doc.base_matrix())
    try:
        rep = maslov_index(
            path, e, samples=args.samples, max_refine=args.max_refine,
            tol_cluster=args.tol_cluster, require_certified=args.certified,
        )
    except UncertifiedError as exc:
        rep = exc.report
        _emit(args, _index_payload(rep), _index_text(rep))
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    _emit(args, _index_payload(rep), _index_text(rep))
    return 0


def cmd_spectrum(args) -> int:
    point = docs.load(docs.PointDocument, args.point)
    e = _base(args, np.eye(point.n, dtype=complex))
    spec = relative_spectrum(point.to_matrix(), e, args.tol_cluster)
    rows = [{"angle": float(a), "multiplicity": int(m)} for a, m in spec.clusters]
    text = "\n".join(["angle        multiplicity"] + [f"{r['angle']:<12.8g} {r['multiplicity']}" for r in rows])
    _emit(args, {"n": spec.n, "clusters": rows}, text)
    return 0


def cmd_pair(args) -> int:
    x = docs.load(docs.PointDocument, args.x).to_matrix()
    y = docs.load(docs.PointDocument, args.y).to_matrix()
    rep = pair_report(x, y)
    payload = {"dim_intersection": rep.dim_intersection, "transverse": rep.transverse, "fredholm": rep.fredholm}
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(args, payload, text)
    return 0


def cmd_winding(args) -> int:
    doc = docs.load(docs.PathDocument, args.path)
    e = _base(args, doc.base_matrix())
    w = winding_number_det(doc.to_path(), e, samples=args.samples, max_refine=args.max_refine)
    _emit(args, {"winding": w}, str(w))
    return 0


def cmd_formula_e(args) -> int:
    doc = docs.load(docs.FormulaEDocument, args.config)
    sigma, tau, e = doc.to_objects()
    rep = check_formula_E(sigma, tau, e, args.construction)
    payload = {
        "lhs": rep.lhs,
        "rhs": str(rep.rhs),
        "equal": rep.equal,
        "m": rep.m,
        "iota": rep.iota,
        "mu_tau": rep.mu_tau,
        "mu_sigma": rep.mu_sigma,
    }
    text = "\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in payload.items())
    _emit(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    res = run_suite(args.suite, seed=args.seed, count=args.count)
    payload = {"suite": res.name, "passed": res.passed, "cases": res.cases, "failures": res.failures}
    text = "\n".join([res.summary()] + [f"  {f}" for f in res.failures])
    _emit(args, payload, text)
    return 0 if res.passed else 1


def cmd_flow(args) -> int:
    doc = docs.load(docs.PathDocument, args.path)
    e = _base(args, doc.base_matrix())
    ts, angles = eigenvalue_flow(doc.to_path(), e, samples=args.samples, max_refine=args.max_refine)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t"] + [f"theta{j + 1}" for j in range(angles.shape[1])])
    for t, row in zip(ts, angles):
        writer.writerow([repr(float(t))] + [repr(float(a)) for a in row])
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tol-cluster", type=float, default=TOL_CLUSTER)
    common.add_argument("--max-refine", type=int, default=MAX_REFINE)
    common.add_argument("--samples", type=int, default=None, help="initial samples for refinable paths")

    parser = argparse.ArgumentParser(prog="jbmaslov", description="Maslov index of paths of symmetric unitary matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[common], help="Maslov index of a path")
    p.add_argument("path")
    p.add_argument("--base")
    p.add_argument("--certified", action="store_true", help="exit 2 unless every step is certified")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("spectrum", parents=[common], help="relative spectrum of a point")
    p.add_argument("point")
    p.add_argument("--base")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("pair", parents=[common], help="intersection of the Lagrangians of two points")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("winding", parents=[common], help="winding number of det along a loop")
    p.add_argument("path")
    p.add_argument("--base")
    p.set_defaults(func=cmd_winding)

    p = sub.add_parser("formula-e", parents=[common], help="compare the two-point index with the index formula")
    p.add_argument("config")
    p.add_argument("--construction", choices=CONSTRUCTIONS, default=CONSTRUCTIONS[0])
    p.set_defaults(func=cmd_formula_e)

    p = sub.add_parser("verify", parents=[common], help="run a randomized verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("flow", parents=[common], help="CSV of continuously tracked eigenvalue angles")
    p.add_argument("path")
    p.add_argument("--base")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_flow)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; here 2 means "uncertified"
        return 0 if exc.code == 0 else 1
    if args.max_refine < 0:
        print("error: --max-refine must be non-negative", file=sys.stderr)
        return 1
    if args.samples is not None and args.samples < 2:
        print("error: --samples must be at least 2", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except JBMaslovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
