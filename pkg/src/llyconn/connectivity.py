"""Edge-connectivity, min-cut witnesses and the bipartite graph a cut induces.

A min cut E(X, Y) induces the bipartite graph H on the cut-edge endpoints.  For
an edge e of H the matching/overlap counts |c_e|, |d_e|, |f_e| control how cheap
transport across e can be; this module computes them and evaluates the cost
lower bound and the star-cut Wasserstein bound they feed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .curvature import cost_of_edge
from .graph import Edge, Graph, GraphError, is_star, sphere_of_edge
from .transport import vertex_measure, wasserstein


class CutError(ValueError):
    pass


class PreconditionError(CutError):
    pass


@dataclass(frozen=True)
class CutCertificate:
    cut_edges: tuple[Edge, ...]
    side_x: frozenset[int]
    side_y: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.cut_edges)

    @classmethod
    def from_side(cls, g: Graph, side_x) -> "CutCertificate":
        x = frozenset(side_x)
        y = frozenset(range(g.n)) - x
        cut = tuple(sorted(Edge.of(a, b) for a in x for b in g.adj[a] if b in y))
        return cls(cut, x, y)

    def to_dict(self) -> dict:
        return {"size": self.size, "cut_edges": [list(e) for e in self.cut_edges],
                "side_x": sorted(self.side_x), "side_y": sorted(self.side_y)}


def validate_certificate(g: Graph, cert: CutCertificate) -> None:
    if not cert.side_x or not cert.side_y:
        raise CutError("both sides of a cut must be nonempty")
    if cert.side_x & cert.side_y or (cert.side_x | cert.side_y) != frozenset(range(g.n)):
        raise CutError("sides must partition the vertex set")
    expected = CutCertificate.from_side(g, cert.side_x).cut_edges
    if tuple(sorted(cert.cut_edges)) != expected:
        raise CutError("cut edges are not exactly E(X, Y)")


# --- max flow ---------------------------------------------------------------

def max_flow(n: int, capacity: dict[tuple[int, int], int], s: int, t: int) -> tuple[int, set[int]]:
    """Edmonds-Karp on a directed capacity map; returns (value, source side of a min cut)."""
    residual: dict[int, dict[int, int]] = {v: {} for v in range(n)}
    for (a, b), c in capacity.items():
        residual[a][b] = residual[a].get(b, 0) + c
        residual[b].setdefault(a, 0)
    value = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            v = queue.popleft()
            for w, c in sorted(residual[v].items()):
                if c > 0 and w not in parent:
                    parent[w] = v
                    queue.append(w)
        if t not in parent:
            return value, set(parent)
        path, v = [], t
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        push = min(residual[a][b] for a, b in path)
        for a, b in path:
            residual[a][b] -= push
            residual[b][a] += push
        value += push


def _undirected_capacity(edges) -> dict[tuple[int, int], int]:
    cap: dict[tuple[int, int], int] = {}
    for a, b, w in edges:
        cap[(a, b)] = cap.get((a, b), 0) + w
        cap[(b, a)] = cap.get((b, a), 0) + w
    return cap


def global_min_cut(n: int, weighted_edges) -> tuple[int, set[int]]:
    """Minimum weight edge cut of an undirected multigraph given as (a, b, weight)."""
    if n < 2:
        return 0, set()
    cap = _undirected_capacity(weighted_edges)
    best, side = None, set()
    for t in range(1, n):
        val, src = max_flow(n, cap, 0, t)
        if best is None or val < best:
            best, side = val, src
    return best, side


def edge_connectivity(g: Graph) -> tuple[int, CutCertificate]:
    """kappa'(G) with a witnessing cut; the first minimum found from vertex 0."""
    if g.n < 2:
        return 0, CutCertificate((), frozenset(range(g.n)), frozenset())
    value, side = global_min_cut(g.n, [(a, b, 1) for a, b in g.edges()])
    return value, CutCertificate.from_side(g, side)


def all_min_cuts(g: Graph, max_n: int = 10) -> list[CutCertificate]:
    """Every minimum edge cut, by enumerating vertex subsets (small graphs only)."""
    if g.n > max_n:
        raise CutError(f"exhaustive min-cut mode limited to {max_n} vertices")
    k, _ = edge_connectivity(g)
    out = []
    rest = list(range(1, g.n))
    for size in range(0, g.n - 1):
        for extra in combinations(rest, size):
            side = {0, *extra}
            cert = CutCertificate.from_side(g, side)
            if cert.size == k:
                out.append(cert)
    return out


# --- cut bipartite graph ----------------------------------------------------

@dataclass(frozen=True)
class CutBipartite:
    """H on the cut endpoints; side 0 (A) is the smaller part."""

    h: Graph
    back_map: tuple[int, ...]
    swapped: bool

    @property
    def p(self) -> int:
        return self.h.sides.count(0)

    @property
    def q(self) -> int:
        return self.h.sides.count(1)

    @property
    def r(self) -> int:
        return self.h.m

    @property
    def part_a(self) -> list[int]:
        return [v for v in range(self.h.n) if self.h.sides[v] == 0]

    @property
    def part_b(self) -> list[int]:
        return [v for v in range(self.h.n) if self.h.sides[v] == 1]

    def to_g(self, v: int) -> int:
        return self.back_map[v]

    def from_g(self, v: int) -> int:
        return self.back_map.index(v)

    def edge_from_g(self, e) -> Edge:
        return Edge.of(self.from_g(e[0]), self.from_g(e[1]))

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r,
                "A": [self.to_g(v) for v in self.part_a], "B": [self.to_g(v) for v in self.part_b],
                "edges": [[self.to_g(u), self.to_g(v)] for u, v in self.h.edges()]}


def cut_bipartite(g: Graph, cert: CutCertificate) -> CutBipartite:
    validate_certificate(g, cert)
    if not cert.cut_edges:
        raise CutError("empty cut has no bipartite graph")
    ends = sorted({v for e in cert.cut_edges for v in e})
    index = {v: i for i, v in enumerate(ends)}
    sides = [0 if v in cert.side_x else 1 for v in ends]
    swapped = sides.count(0) > sides.count(1)
    if swapped:
        sides = [1 - s for s in sides]
    h = Graph.from_edges(len(ends), [(index[a], index[b]) for a, b in cert.cut_edges], sides)
    return CutBipartite(h, tuple(ends), swapped)


# --- matching and cut quantities --------------------------------------------

def maximum_matching(h: Graph, allowed=None) -> list[Edge]:
    """Maximum matching of a bipartite graph (augmenting paths), optionally on a vertex subset."""
    if h.sides is None:
        raise GraphError("matching needs a bipartition")
    allowed = set(range(h.n)) if allowed is None else set(allowed)
    left = [v for v in sorted(allowed) if h.sides[v] == 0]
    mate: dict[int, int] = {}

    def augment(u, seen):
        for w in h.adj[u]:
            if w in allowed and w not in seen:
                seen.add(w)
                if w not in mate or augment(mate[w], seen):
                    mate[w] = u
                    return True
        return False

    for u in left:
        augment(u, set())
    return sorted(Edge.of(u, w) for w, u in mate.items())


@dataclass(frozen=True)
class CutQuantities:
    s1_size: int
    c_size: int
    d_size: int
    f_size: int
    # edge-set readings of d_e / f_e (overlap with V(S_1(e) + c_e)); reported only
    prose_d: int
    prose_f: int

    @property
    def prose_agrees(self) -> bool:
        return (self.prose_d, self.prose_f) == (self.d_size, self.f_size)

    def to_dict(self) -> dict:
        return {"s1": self.s1_size, "c": self.c_size, "d": self.d_size, "f": self.f_size,
                "prose_d": self.prose_d, "prose_f": self.prose_f}


def cut_quantities(cb: CutBipartite, e: Edge) -> CutQuantities:
    """|S_1(e)|, |c_e| and the identity-derived |d_e|, |f_e| for an edge of H."""
    h = cb.h
    e = Edge.of(*e)
    if not h.has_edge(*e):
        raise CutError(f"{e} is not an edge of H")
    s1 = sphere_of_edge(h, e)
    used = {v for f in s1 for v in f} | set(e)
    c_edges = maximum_matching(h, allowed=set(range(h.n)) - used)
    s1n, c = len(s1), len(c_edges)
    p, q, r = cb.p, cb.q, cb.r
    d = p + q - 2 - s1n - 2 * c
    f = r - 1 - s1n - c - d
    if s1n + d + 2 * f != 2 * r - (p + q):
        raise AssertionError("cut quantity identities inconsistent")

    covered = {v for f_ in s1 for v in f_} | {v for f_ in c_edges for v in f_}
    skip = s1 | set(c_edges) | {e}
    overlaps = [len(covered & set(x)) for x in h.edges() if x not in skip]
    return CutQuantities(s1n, c, d, f, overlaps.count(1), overlaps.count(2))


def quantity_identities_hold(cb: CutBipartite, cq: CutQuantities) -> bool:
    p, q, r = cb.p, cb.q, cb.r
    s1, c, d, f = cq.s1_size, cq.c_size, cq.d_size, cq.f_size
    return (s1 + c + d + f == r - 1 and s1 + 2 * c + d == p + q - 2
            and s1 + d + 2 * f == 2 * r - (p + q))


# --- bound checks ------------------------------------------------------------

def _cut_edge(cert: CutCertificate, e) -> Edge:
    e = Edge.of(*e)
    if e not in cert.cut_edges:
        raise PreconditionError(f"{e} is not a cut edge")
    return e


def claim_cost_bound(g: Graph, cert: CutCertificate, e0, delta: int | None = None) -> dict:
    """cost(e0) against |c| + 2|d| + 3(|f| + delta - r) for a cut edge with both ends of degree delta."""
    e0 = _cut_edge(cert, e0)
    delta = g.min_degree() if delta is None else delta
    if g.degree(e0.u) != delta or g.degree(e0.v) != delta:
        raise PreconditionError(f"endpoints of {e0} must both have degree {delta}")
    cb = cut_bipartite(g, cert)
    cq = cut_quantities(cb, cb.edge_from_g(e0))
    bound = cq.c_size + 2 * cq.d_size + 3 * (cq.f_size + delta - cb.r)
    cost = cost_of_edge(g, e0)
    return {"edge": list(e0), "cost": cost, "bound": bound, "holds": cost >= bound,
            "quantities": cq.to_dict()}


def check_claim_cost_bound(g: Graph, cert: CutCertificate, e0, delta: int | None = None) -> bool:
    return claim_cost_bound(g, cert, e0, delta)["holds"]


def star_bound_value(dx: int, dy: int, alpha: int, s1: int) -> Fraction:
    """Lower bound on W(mu_x^rho, mu_y^rho) across a star cut with centre x."""
    sigma = max(dx, dy) * (min(dx, dy) + 1)
    return Fraction(sigma + (dx * dy - (alpha + 2) * dx) + (dx * dy - 2 * (s1 + 1) * dy), sigma)


def star_cut_bound(g: Graph, cert: CutCertificate, e, delta: int | None = None) -> dict:
    e = _cut_edge(cert, e)
    delta = g.min_degree() if delta is None else delta
    cb = cut_bipartite(g, cert)
    if not is_star(cb.h):
        raise PreconditionError("cut bipartite graph is not a star")
    if cb.r > delta - 1:
        raise PreconditionError(f"cut size {cb.r} exceeds delta - 1 = {delta - 1}")
    # x is the centre of the star (the side of size 1)
    centre = cb.to_g(cb.part_a[0])
    x, y = (e.u, e.v) if e.u == centre else (e.v, e.u)
    if x != centre and cb.r > 1:
        raise PreconditionError("edge does not meet the star centre")
    dx, dy = g.degree(x), g.degree(y)
    alpha = len(g.common_neighbors(x, y))
    s1 = cb.r - 1
    rho = max(Fraction(1, dx + 1), Fraction(1, dy + 1))
    w, _ = wasserstein(g, vertex_measure(g, x, rho), vertex_measure(g, y, rho))
    bound = star_bound_value(dx, dy, alpha, s1)
    return {"edge": [x, y], "d_x": dx, "d_y": dy, "alpha": alpha, "s1": s1,
            "rho": rho, "W": w, "bound": bound, "holds": w >= bound}


def check_star_cut_lower_bound(g: Graph, cert: CutCertificate, e, delta: int | None = None) -> bool:
    return star_cut_bound(g, cert, e, delta)["holds"]


def edge_star_check(g: Graph, cert: CutCertificate, e0, kappa: Fraction, delta: int | None = None):
    """Contrapositive of the negative-curvature link for a cut edge with both ends of degree delta.

    Returns None when the hypotheses do not apply, else whether the implication holds:
    r = delta - 1 and kappa >= 0  ->  |S_1(e0)| >= r - (p+q)/2;
    r <= delta - 2 and kappa >= 0 ->  |S_1(e0)| >  r - (p+q)/2.
    """
    e0 = _cut_edge(cert, e0)
    delta = g.min_degree() if delta is None else delta
    if g.degree(e0.u) != delta or g.degree(e0.v) != delta or kappa < 0:
        return None
    cb = cut_bipartite(g, cert)
    s1 = len(sphere_of_edge(cb.h, cb.edge_from_g(e0)))
    threshold = cb.r - Fraction(cb.p + cb.q, 2)
    if cb.r == delta - 1:
        return s1 >= threshold
    if cb.r <= delta - 2:
        return s1 > threshold
    return None


def analyze_cut(g: Graph, cert: CutCertificate, delta: int | None = None) -> dict:
    """JSON-ready cut analysis: certificate, H, per-edge quantities and bound verdicts."""
    delta = g.min_degree() if delta is None else delta
    cb = cut_bipartite(g, cert)
    per_edge = []
    for e in cert.cut_edges:
        cq = cut_quantities(cb, cb.edge_from_g(e))
        row = {"edge": list(e), "quantities": cq.to_dict(),
               "identities_hold": quantity_identities_hold(cb, cq),
               "prose_agrees": cq.prose_agrees}
        if g.degree(e.u) == delta == g.degree(e.v):
            res = claim_cost_bound(g, cert, e, delta)
            row["cost_bound"] = {"cost": res["cost"], "bound": res["bound"], "holds": res["holds"]}
        if is_star(cb.h) and cb.r <= delta - 1:
            res = star_cut_bound(g, cert, e, delta)
            row["star_bound"] = {"W": _fj(res["W"]), "bound": _fj(res["bound"]), "holds": res["holds"]}
        per_edge.append(row)
    return {"certificate": cert.to_dict(), "H": cb.to_dict(), "delta": delta, "edges": per_edge}


def _fj(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}
