"""Edge-star bound for bipartite graphs, rigid-family recognition, and an exhaustive census.

For a bipartite H without isolated vertices that is not a star,
min_e |S_1(e)| <= |E| - |V|/2.  Equality holds exactly for K_{2,2} and four
families indexed by the edge count n:

  H1(n)  perfect matching (n disjoint edges)
  H2(n)  two stars K_{1,n/2} whose centres lie in the same part (of size 2)
  H3(n)  two stars K_{1,n/2} whose centres lie in opposite parts
  H4(n)  double star: adjacent centres, each with (n-1)/2 leaves
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import BudgetExceeded, Graph, GraphError, canonical_form, connected_components, is_forest, is_star
from .graphio import to_graph6

RIGID_TAGS = ("K22", "H1", "H2", "H3", "H4")
CENSUS_BUDGET = 8


class BoundPreconditionError(GraphError):
    """The edge-star bound does not apply; ``tag`` is Star, HasIsolated or NotBipartite."""

    def __init__(self, tag: str, message: str):
        super().__init__(message)
        self.tag = tag


@dataclass(frozen=True)
class RigidityClass:
    tag: str
    n: int | None = None

    def __post_init__(self):
        if self.tag in ("H2", "H3") and self.n % 2:
            raise ValueError(f"{self.tag} needs an even edge count")
        if self.tag == "H4" and (self.n < 3 or self.n % 2 == 0):
            raise ValueError("H4 needs an odd edge count >= 3")

    @property
    def rigid(self) -> bool:
        """Member of the equality list (H1(1) = K_{1,1} is a star, so excluded)."""
        if self.tag == "H1":
            return self.n >= 2
        return self.tag in RIGID_TAGS

    def __str__(self):
        return self.tag if self.n is None else f"{self.tag}({self.n})"


def min_edge_star(h: Graph) -> int:
    edges = h.edges()
    if not edges:
        raise GraphError("edgeless graph")
    return min(h.degree(u) + h.degree(v) - 2 for u, v in edges)


def _check_parts(h: Graph) -> None:
    if h.sides is None:
        raise BoundPreconditionError("NotBipartite", "graph carries no bipartition")
    if any(h.sides[u] == h.sides[v] for u, v in h.edges()):
        raise BoundPreconditionError("NotBipartite", "an edge lies inside one part")


def check_bound(h: Graph) -> tuple[bool, Fraction]:
    """(holds, slack) with slack = (|E| - |V|/2) - min_e |S_1(e)|."""
    _check_parts(h)
    if any(h.degree(v) == 0 for v in range(h.n)):
        raise BoundPreconditionError("HasIsolated", "graph has an isolated vertex")
    if is_star(h):
        raise BoundPreconditionError("Star", "the bound excludes stars")
    slack = h.m - Fraction(h.n, 2) - min_edge_star(h)
    return slack >= 0, slack


def with_parts(h: Graph, part_a, part_b) -> Graph:
    a, b = set(part_a), set(part_b)
    if a & b or (a | b) != set(range(h.n)):
        raise GraphError("parts must partition the vertex set")
    return h.with_sides([0 if v in a else 1 for v in range(h.n)])


def _star_centre(h: Graph, comp: list[int]):
    """Centre of a component that is a star with >= 2 edges, else None."""
    if len(comp) < 3 or sum(h.degree(v) for v in comp) != 2 * (len(comp) - 1):
        return None
    hubs = [v for v in comp if h.degree(v) == len(comp) - 1]
    return hubs[0] if hubs else None


def classify(h: Graph, bipartition=None) -> RigidityClass:
    """Structural recognition of the equality families; first match in H1 > H2 > H3 > H4."""
    if bipartition is not None:
        h = with_parts(h, *bipartition)
    _check_parts(h)
    if any(h.degree(v) == 0 for v in range(h.n)):
        return RigidityClass("HasIsolated")
    n = h.m
    degrees = [h.degree(v) for v in range(h.n)]
    if all(d == 1 for d in degrees):
        return RigidityClass("H1", n)
    if is_star(h):
        return RigidityClass("Star")
    if h.n == 4 and n == 4 and h.sides.count(0) == 2:
        return RigidityClass("K22")

    comps = connected_components(h)
    if len(comps) == 2:
        centres = [_star_centre(h, c) for c in comps]
        if None not in centres and len(comps[0]) == len(comps[1]):
            same_part = h.sides[centres[0]] == h.sides[centres[1]]
            return RigidityClass("H2" if same_part else "H3", n)
    if len(comps) == 1 and n % 2 == 1 and n >= 3 and is_forest(h):
        inner = [v for v in range(h.n) if degrees[v] > 1]
        if len(inner) == 2 and h.has_edge(*inner) and degrees[inner[0]] == degrees[inner[1]]:
            return RigidityClass("H4", n)
    return RigidityClass("NotRigid")


# --- census ------------------------------------------------------------------

def _component_key(h: Graph) -> bytes:
    return canonical_form(h, respect_bipartition=True, allow_swap=False)


def connected_bipartite_components(max_edges: int) -> dict[int, list[Graph]]:
    """Connected side-labelled bipartite graphs with 1..max_edges edges, one per class.

    Every connected graph with r >= 2 edges loses a leaf or a cycle edge and
    stays connected, so growing by pendant vertices and chords reaches all.
    """
    layer = {_component_key(g): g for g in [Graph.from_edges(2, [(0, 1)], [0, 1])]}
    out = {1: list(layer.values())}
    for r in range(2, max_edges + 1):
        nxt: dict[bytes, Graph] = {}
        for g in out[r - 1]:
            edges = g.edges()
            cands = [Graph.from_edges(g.n + 1, edges + [(v, g.n)], list(g.sides) + [1 - g.sides[v]])
                     for v in range(g.n)]
            cands += [Graph.from_edges(g.n, edges + [(a, b)], g.sides)
                      for a in range(g.n) for b in range(a + 1, g.n)
                      if g.sides[a] != g.sides[b] and not g.has_edge(a, b)]
            for c in cands:
                nxt.setdefault(_component_key(c), c)
        out[r] = [nxt[k] for k in sorted(nxt)]
    return out


def _disjoint_union(parts: list[Graph]) -> Graph:
    edges, sides, off = [], [], 0
    for g in parts:
        edges += [(u + off, v + off) for u, v in g.edges()]
        sides += list(g.sides)
        off += g.n
    return Graph.from_edges(off, edges, sides)


def _swap_sides(g: Graph) -> Graph:
    return g.with_sides([1 - s for s in g.sides])


@dataclass
class CensusRow:
    graph: Graph
    p: int
    q: int
    r: int
    min_star: int | None
    slack: Fraction | None
    cls: RigidityClass

    def to_dict(self) -> dict:
        return {"graph6": to_graph6(self.graph), "sides": "".join(map(str, self.graph.sides)),
                "p": self.p, "q": self.q, "r": self.r, "min_edge_star": self.min_star,
                "slack": None if self.slack is None else {"num": self.slack.numerator, "den": self.slack.denominator},
                "class": str(self.cls)}


@dataclass
class BipartiteCensus:
    max_edges: int
    rows: list[CensusRow] = field(default_factory=list)
    stars: int = 0
    violations: list[CensusRow] = field(default_factory=list)
    mismatches: list[CensusRow] = field(default_factory=list)
    non_forest_equality: list[CensusRow] = field(default_factory=list)

    @property
    def equality_rows(self) -> list[CensusRow]:
        return [row for row in self.rows if row.slack == 0]

    @property
    def equality_tags(self) -> list[str]:
        return sorted(str(row.cls) for row in self.equality_rows)

    @property
    def ok(self) -> bool:
        return not (self.violations or self.mismatches or self.non_forest_equality)

    def shape_counts(self) -> dict[tuple[int, int, int], int]:
        return dict(sorted(Counter((row.p, row.q, row.r) for row in self.rows).items()))

    def summary(self) -> dict:
        return {
            "max_edges": self.max_edges,
            "classes": len(self.rows) + self.stars,
            "non_star": len(self.rows),
            "stars": self.stars,
            "violations": [row.to_dict() for row in self.violations],
            "classification_mismatches": [row.to_dict() for row in self.mismatches],
            "non_forest_equality": [row.to_dict() for row in self.non_forest_equality],
            "equality_set": self.equality_tags,
            "counts": [{"p": p, "q": q, "r": r, "count": c} for (p, q, r), c in self.shape_counts().items()],
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["graph6", "sides", "p", "q", "r", "min_edge_star", "slack_num", "slack_den", "class"])
        for row in self.rows:
            w.writerow([to_graph6(row.graph), "".join(map(str, row.graph.sides)), row.p, row.q, row.r,
                        row.min_star, row.slack.numerator, row.slack.denominator, row.cls])
        return buf.getvalue()


def _multisets(items: list[tuple[int, Graph]], budget: int, start: int = 0):
    """Non-decreasing index sequences over ``items`` with total weight <= budget."""
    yield []
    for i in range(start, len(items)):
        w, _ = items[i]
        if w <= budget:
            for rest in _multisets(items, budget - w, i):
                yield [i] + rest


def enumerate_bipartite_census(max_edges: int = CENSUS_BUDGET, budget: int = CENSUS_BUDGET) -> BipartiteCensus:
    """Every side-labelled bipartite graph without isolated vertices and with <= max_edges edges.

    Classes are taken up to part-preserving isomorphism, with the parts oriented
    so that p <= q and, when p == q, a part swap identified.
    """
    if max_edges > budget:
        raise BudgetExceeded(f"max_edges {max_edges} exceeds budget {budget}")
    comps = connected_bipartite_components(max_edges)
    items = [(r, g) for r in sorted(comps) for g in comps[r]]
    keys = [_component_key(g) for _, g in items]
    swapped_keys = [_component_key(_swap_sides(g)) for _, g in items]
    report = BipartiteCensus(max_edges)
    for combo in _multisets(items, max_edges):
        if not combo:
            continue
        h = _disjoint_union([items[i][1] for i in combo])
        p, q = h.sides.count(0), h.sides.count(1)
        if p > q:
            continue
        if p == q and sorted(keys[i] for i in combo) > sorted(swapped_keys[i] for i in combo):
            continue
        if is_star(h):
            report.stars += 1
            continue
        holds, slack = check_bound(h)
        row = CensusRow(h, p, q, h.m, min_edge_star(h), slack, classify(h))
        report.rows.append(row)
        if not holds:
            report.violations.append(row)
        if (slack == 0) != row.cls.rigid:
            report.mismatches.append(row)
        if slack == 0 and row.cls.tag != "K22" and not is_forest(h):
            report.non_forest_equality.append(row)
    return report
