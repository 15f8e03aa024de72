"""Command-line entry point.

Exit codes: 0 ok, 1 usage or input error, 2 a check failed or a counterexample
was found, 3 enumeration budget exceeded, 4 a negative edge was found by
``curvature --early-exit``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bipartite import classify, enumerate_bipartite_census
from .census import DEFAULT_MAX_N, run_census
from .connectivity import CutCertificate, CutError, analyze_cut, cut_bipartite, edge_connectivity
from .curvature import CurvatureError, curvature_profile
from .families import FamilySpec, SpecError, certify_interior, generate, load_spec, pairing_sweep, verify_family
from .graph import BudgetExceeded, Edge, GraphError, is_connected
from .graphio import read_graph

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_BUDGET, EXIT_NEGATIVE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args):
    if not args.input:
        raise UsageError("--input is required")
    return read_graph(args.input, args.format)


def cmd_curvature(args) -> int:
    g = _load(args)
    edges = None
    if args.edge:
        e = Edge.of(*args.edge)
        if not g.has_edge(*e):
            raise UsageError(f"{tuple(args.edge)} is not an edge")
        edges = [e]
    report = curvature_profile(g, early_exit=args.early_exit, jobs=args.jobs, edges=edges)
    _emit(args, report.to_csv() if args.csv else report.to_json())
    if args.early_exit and not report.nonnegative:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_connectivity(args) -> int:
    _json_only(args)
    g = _load(args)
    k, cert = edge_connectivity(g)
    out = {"n": g.n, "m": g.m, "kappa_edge": k, "min_degree": g.min_degree(), "certificate": cert.to_dict()}
    _emit(args, json.dumps(out, indent=2))
    return EXIT_OK


def _bound_failures(report: dict) -> int:
    bad = 0
    for row in report["edges"]:
        bad += not row["identities_hold"]
        for key in ("cost_bound", "star_bound"):
            if key in row and not row[key]["holds"]:
                bad += 1
    return bad


def cmd_cut_analyze(args) -> int:
    _json_only(args)
    if args.spec:
        return _cut_analyze_family(args)
    g = _load(args)
    if g.n < 2 or not is_connected(g):
        raise UsageError("cut analysis needs a connected graph with at least 2 vertices")
    k, cert = edge_connectivity(g)
    delta = g.min_degree()
    report = {"kappa_edge": k, "min_degree": delta, **analyze_cut(g, cert, delta)}
    report["H"]["class"] = str(classify(cut_bipartite(g, cert).h))
    _emit(args, json.dumps(report, indent=2))
    return EXIT_CHECK if _bound_failures(report) else EXIT_OK


def _cut_analyze_family(args) -> int:
    spec = _spec_from_args(args)
    t = generate(spec)
    g = t.graph
    interior = certify_interior(spec, t)
    k, cert = edge_connectivity(g)
    delta = spec.claimed_delta
    cuts, left = [], set()
    for block in t.blocks[:-1]:
        left |= set(block)
        c = CutCertificate.from_side(g, left)
        if c.cut_edges and all(e in interior for e in c.cut_edges):
            rep = analyze_cut(g, c, delta)
            rep["H"]["class"] = str(classify(cut_bipartite(g, c).h))
            cuts.append(rep)
    sizes = sorted({c["certificate"]["size"] for c in cuts})
    report = {
        "family": spec.label(),
        "kappa_edge": k, "min_degree": g.min_degree(),
        "claimed_delta": delta,
        "global_cut_at_boundary": not all(e in interior for e in cert.cut_edges),
        "interior_cut_sizes": sizes,
        "interior_min_cut": sizes[0] if sizes else None,
        "interior_cuts": cuts,
    }
    _emit(args, json.dumps(report, indent=2))
    return EXIT_CHECK if any(_bound_failures(c) for c in cuts) else EXIT_OK


def _json_only(args):
    if args.csv:
        raise UsageError(f"{args.command} reports are JSON only")


def cmd_census(args) -> int:
    _json_only(args)
    max_n = args.max_n or DEFAULT_MAX_N
    report = run_census(max_n, extended=args.extended, jobs=args.jobs,
                        regular_only=args.regular, all_cuts=args.all_cuts)
    _emit(args, report.to_json())
    if report.counterexamples:
        Path(args.counterexamples).write_text("".join(r.graph6 + "\n" for r in report.counterexamples))
    return EXIT_OK if report.ok else EXIT_CHECK


def cmd_bipartite_census(args) -> int:
    report = enumerate_bipartite_census(args.max_edges)
    _emit(args, report.to_csv() if args.csv else report.to_json())
    return EXIT_OK if report.ok else EXIT_CHECK


def _spec_from_args(args) -> FamilySpec:
    if not args.spec:
        raise UsageError("--spec is required")
    spec = load_spec(args.spec)
    if args.layers:
        if spec.base == "FromFile":
            raise UsageError("--layers does not apply to FromFile specs")
        spec = spec.with_layers(args.layers)
    return spec


def cmd_family(args) -> int:
    _json_only(args)
    spec = _spec_from_args(args)
    if args.pairing_sweep:
        rows = pairing_sweep(spec, jobs=args.jobs)
        _emit(args, json.dumps({"family": spec.label(), "pairings": rows}, indent=2))
        return EXIT_OK if all(r["ok"] for r in rows) else EXIT_CHECK
    report = verify_family(spec, jobs=args.jobs)
    _emit(args, report.to_json())
    return EXIT_OK if report.ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="llyconn", description="Exact curvature and edge-connectivity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("--input", help="graph file (graph6 or adjacency list)")
            p.add_argument("--format", choices=["graph6", "adj"], help="default: by file suffix")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--jobs", type=int, default=1)
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="JSON report (default)")
        fmt.add_argument("--csv", action="store_true")

    p = sub.add_parser("curvature", help="Lin-Lu-Yau curvature of every edge")
    common(p)
    p.add_argument("--edge", nargs=2, type=int, metavar=("U", "V"))
    p.add_argument("--early-exit", action="store_true", help="stop at the first negative edge (exit 4)")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("connectivity", help="edge-connectivity with a min-cut witness")
    common(p)
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("cut-analyze", help="min cut, its bipartite graph and the bound checks")
    common(p)
    p.add_argument("--spec", help="family spec JSON: analyse the certified interior cuts instead")
    p.add_argument("--layers", type=int)
    p.set_defaults(func=cmd_cut_analyze)

    p = sub.add_parser("census", help="all connected graphs up to --max-n vertices")
    common(p, graph=False)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--extended", action="store_true", help="allow --max-n 7")
    p.add_argument("--regular", action="store_true", help="regular graphs only")
    p.add_argument("--all-cuts", action="store_true", help="check every min cut, not just the first")
    p.add_argument("--counterexamples", default="census_counterexamples.g6")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("bipartite-census", help="edge-star bound over all small bipartite graphs")
    common(p, graph=False)
    p.add_argument("--max-edges", type=int, default=8)
    p.set_defaults(func=cmd_bipartite_census)

    p = sub.add_parser("family", help="generate and verify a family truncation")
    common(p, graph=False)
    p.add_argument("--spec")
    p.add_argument("--layers", type=int)
    p.add_argument("--pairing-sweep", action="store_true", help="try every K-operation pairing")
    p.set_defaults(func=cmd_family)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.jobs < 1:
        print(json.dumps({"error": "usage", "message": "--jobs must be >= 1"}), file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget", "message": str(exc)}), file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GraphError, SpecError, CurvatureError, CutError) as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(json.dumps({"error": "check", "message": str(exc)}), file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
