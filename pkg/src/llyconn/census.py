"""Exhaustive census of small connected graphs.

Every connected graph whose edges all have nonnegative curvature should have
edge-connectivity equal to its minimum degree.  Along the way every min cut
met is run through the cut-quantity identities, the cost lower bound, the
star-cut Wasserstein bound and the negative-curvature contrapositive.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .checks import Check
from .connectivity import (all_min_cuts, claim_cost_bound, cut_bipartite, cut_quantities,
                           edge_connectivity, edge_star_check, quantity_identities_hold, star_cut_bound)
from .curvature import curvature_profile, kappa_lly
from .graph import BudgetExceeded, Graph, canonical_form, is_star
from .graphio import to_graph6

DEFAULT_MAX_N = 6
EXTENDED_MAX_N = 7

CUT_CHECKS = ("identities", "cost_bound", "cost_bound_at_delta", "star_bound", "edge_star")


def connected_graphs(max_n: int) -> dict[int, list[Graph]]:
    """One representative per isomorphism class of connected graphs on 1..max_n vertices.

    Grown by vertex augmentation: every connected graph has a vertex whose
    removal leaves it connected, so each class on n vertices extends a class
    on n - 1 vertices by a vertex joined to a nonempty subset.
    """
    out = {1: [Graph.from_edges(1, [])]}
    for n in range(2, max_n + 1):
        seen: dict[bytes, Graph] = {}
        for g in out[n - 1]:
            base = g.edges()
            for mask in range(1, 1 << g.n):
                new = [(v, g.n) for v in range(g.n) if mask >> v & 1]
                h = Graph.from_edges(n, base + new)
                seen.setdefault(canonical_form(h), h)
        out[n] = [seen[k] for k in sorted(seen)]
    return out


@dataclass
class GraphResult:
    graph6: str
    n: int
    m: int
    delta: int
    kappa_edge: int
    nonnegative: bool
    regular: bool
    checks: dict[str, Check]

    @property
    def counterexample(self) -> bool:
        return self.nonnegative and self.kappa_edge != self.delta


def analyse_graph(g: Graph, all_cuts: bool = False) -> GraphResult:
    delta = g.min_degree()
    k, cert = edge_connectivity(g)
    profile = curvature_profile(g, early_exit=True)
    nonneg = profile.complete and profile.nonnegative
    checks = {name: Check() for name in CUT_CHECKS}
    g6 = to_graph6(g)
    if g.n >= 2:
        certs = all_min_cuts(g) if all_cuts else [cert]
        for c in certs:
            _check_cut(g, c, delta, checks, g6)
    degrees = {g.degree(v) for v in range(g.n)}
    return GraphResult(g6, g.n, g.m, delta, k, nonneg, len(degrees) == 1, checks)


def _check_cut(g: Graph, cert, delta: int, checks: dict[str, Check], g6: str) -> None:
    cb = cut_bipartite(g, cert)
    star = is_star(cb.h)
    for e in cert.cut_edges:
        where = {"graph6": g6, "edge": list(e), "cut": [list(x) for x in cert.cut_edges]}
        cq = cut_quantities(cb, cb.edge_from_g(e))
        checks["identities"].record(quantity_identities_hold(cb, cq), where)
        if g.degree(e.u) == delta == g.degree(e.v):
            res = claim_cost_bound(g, cert, e, delta)
            # the bound is derived for r <= delta - 1; cuts of size delta are tallied apart
            name = "cost_bound" if cb.r <= delta - 1 else "cost_bound_at_delta"
            checks[name].record(res["holds"], {**where, "cost": res["cost"], "bound": res["bound"]})
            verdict = edge_star_check(g, cert, e, kappa_lly(g, *e), delta)
            if verdict is not None:
                checks["edge_star"].record(verdict, where)
        if star and cb.r <= delta - 1:
            res = star_cut_bound(g, cert, e, delta)
            checks["star_bound"].record(res["holds"], {**where, "W": str(res["W"]), "bound": str(res["bound"])})


@dataclass
class CensusReport:
    max_n: int
    results: list[GraphResult] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[GraphResult]:
        return [r for r in self.results if r.counterexample]

    def merged_checks(self) -> dict[str, Check]:
        out = {name: Check() for name in CUT_CHECKS}
        for r in self.results:
            for name, c in r.checks.items():
                out[name].merge(c)
        return out

    @property
    def ok(self) -> bool:
        checks = self.merged_checks()
        # the at-delta tally is informational: the bound is only claimed below delta
        return not self.counterexamples and all(checks[n].ok for n in CUT_CHECKS if n != "cost_bound_at_delta")

    def summary(self) -> dict:
        by_n = Counter(r.n for r in self.results)
        nonneg = Counter(r.n for r in self.results if r.nonnegative)
        return {
            "max_n": self.max_n,
            "graphs": len(self.results),
            "per_n": [{"n": n, "graphs": by_n[n], "nonnegative": nonneg[n]} for n in sorted(by_n)],
            "nonnegative": sum(nonneg.values()),
            "nonnegative_regular": sum(1 for r in self.results if r.nonnegative and r.regular),
            "counterexamples": [{"graph6": r.graph6, "delta": r.delta, "kappa_edge": r.kappa_edge}
                                for r in self.counterexamples],
            "cut_checks": {name: c.to_dict() for name, c in self.merged_checks().items()},
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2)


def run_census(max_n: int = DEFAULT_MAX_N, extended: bool = False, jobs: int = 1,
               regular_only: bool = False, all_cuts: bool = False) -> CensusReport:
    limit = EXTENDED_MAX_N if extended else DEFAULT_MAX_N
    if max_n > limit:
        raise BudgetExceeded(f"max_n {max_n} exceeds budget {limit}" + ("" if extended else " (see --extended)"))
    graphs = [g for n, gs in sorted(connected_graphs(max_n).items()) for g in gs]
    if regular_only:
        graphs = [g for g in graphs if len({g.degree(v) for v in range(g.n)}) == 1]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_analyse_task, [(g, all_cuts) for g in graphs], chunksize=4))
    else:
        results = [analyse_graph(g, all_cuts) for g in graphs]
    return CensusReport(max_n, results)


def _analyse_task(args):
    g, all_cuts = args
    return analyse_graph(g, all_cuts)
