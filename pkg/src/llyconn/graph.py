"""Immutable simple graphs, metric queries and small-graph canonical forms."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class GraphError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class _Infinity:
    """Distance to an unreachable vertex.

    Orders above every integer but refuses arithmetic, so an unreachable pair
    can never leak into a transport cost as a finite number.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("llyconn.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()


class Edge(NamedTuple):
    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        if a == b:
            raise GraphError(f"self-loop at {a}")
        return cls(a, b) if a < b else cls(b, a)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``.  ``sides`` optionally
    assigns each vertex a bipartition side (0 or 1).
    """

    adj: tuple[tuple[int, ...], ...]
    sides: tuple[int, ...] | None = None

    def __post_init__(self):
        n = len(self.adj)
        for v, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"neighbour list of {v} not sorted/unique")
            for w in nbrs:
                if not 0 <= w < n:
                    raise GraphError(f"vertex {w} out of range")
                if w == v:
                    raise GraphError(f"self-loop at {v}")
                if v not in self.adj[w]:
                    raise GraphError(f"asymmetric adjacency {v}->{w}")
        if self.sides is not None:
            if len(self.sides) != n or any(s not in (0, 1) for s in self.sides):
                raise GraphError("sides must give 0/1 for every vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], sides=None) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            if a == b:
                raise GraphError(f"self-loop at {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge ({a}, {b}) out of range for n={n}")
            if b in nbrs[a]:
                raise GraphError(f"duplicate edge ({a}, {b})")
            nbrs[a].add(b)
            nbrs[b].add(a)
        return cls(tuple(tuple(sorted(s)) for s in nbrs), None if sides is None else tuple(sides))

    @property
    def n(self) -> int:
        return len(self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adj[a]

    def edges(self) -> list[Edge]:
        return [Edge(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def ball(self, v: int) -> set[int]:
        """B_1(v)."""
        return {v, *self.adj[v]}

    def common_neighbors(self, a: int, b: int) -> set[int]:
        return set(self.adj[a]) & set(self.adj[b])

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph and the map new id -> old id."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[a], index[b]) for a in old for b in self.adj[a] if b in index and a < b]
        sides = None if self.sides is None else [self.sides[v] for v in old]
        return Graph.from_edges(len(old), edges, sides), old

    def is_complete_on(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])

    def with_sides(self, sides) -> "Graph":
        return Graph(self.adj, tuple(sides))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        edges = [(perm[u], perm[v]) for u, v in self.edges()]
        sides = None
        if self.sides is not None:
            s = [0] * self.n
            for v in range(self.n):
                s[perm[v]] = self.sides[v]
            sides = s
        return Graph.from_edges(self.n, edges, sides)


def bfs_distances(g: Graph, source: int) -> list:
    """Hop distances from ``source``; unreachable vertices get ``INF``."""
    if not 0 <= source < g.n:
        raise GraphError(f"source {source} out of range")
    dist: list = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if dist[w] is INF:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def sphere_of_edge(g: Graph, e: Edge) -> set[Edge]:
    """S_1(e): edges other than e sharing an endpoint with e."""
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"{e} is not an edge")
    out = {Edge.of(u, w) for w in g.adj[u] if w != v}
    out |= {Edge.of(v, w) for w in g.adj[v] if w != u}
    return out


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def is_forest(g: Graph) -> bool:
    return len(connected_components(g)) == g.n - g.m


def is_star(g: Graph) -> bool:
    """K_{1,m}, m >= 1 (no isolated vertices)."""
    if g.n < 2 or g.m != g.n - 1:
        return False
    return any(g.degree(v) == g.n - 1 for v in range(g.n))


# --- canonical forms -------------------------------------------------------

CANON_BUDGET = 16


def _refine(adj, colors: list[int]) -> list[int]:
    """Equitable refinement; colour order is label-independent."""
    n = len(adj)
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _component_certificate(adj, sides) -> tuple:
    n = len(adj)
    nbr_sets = [set(a) for a in adj]
    best = None

    def leaf_cert(colors):
        order = sorted(range(n), key=colors.__getitem__)
        pos = {v: i for i, v in enumerate(order)}
        bits = tuple(sorted((min(pos[a], pos[b]), max(pos[a], pos[b]))
                            for a in range(n) for b in adj[a] if a < b))
        return (tuple(sides[v] for v in order), bits)

    def search(colors):
        nonlocal best
        colors = _refine(adj, colors)
        k = len(set(colors))
        if k == n:
            cert = leaf_cert(colors)
            if best is None or cert < best:
                best = cert
            return
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = min(c for c, vs in cells.items() if len(vs) > 1)
        tried: list[int] = []
        for v in cells[target]:
            # twins give isomorphic subtrees: the transposition is an automorphism
            if any(nbr_sets[v] - {t} == nbr_sets[t] - {v} for t in tried):
                continue
            tried.append(v)
            branch = [2 * c + (1 if c == target and w != v else 0) for w, c in enumerate(colors)]
            search(branch)

    search([s for s in sides])
    return best


def canonical_form(g: Graph, respect_bipartition: bool = False, budget: int = CANON_BUDGET,
                   allow_swap: bool = True) -> bytes:
    """Isomorphism-invariant byte string.

    With ``respect_bipartition`` the vertex sides must be preserved, except that
    the two sides may be swapped when they have equal size (unless
    ``allow_swap`` is off).
    """
    if g.n > budget:
        raise BudgetExceeded(f"{g.n} vertices exceeds canonicalisation budget {budget}")
    if respect_bipartition:
        if g.sides is None:
            raise GraphError("graph carries no bipartition")
        sides = list(g.sides)
    else:
        sides = [0] * g.n
    certs = [_cert_of(g, comp, sides) for comp in connected_components(g)]
    key = sorted(certs)
    if respect_bipartition and allow_swap and sides.count(0) == sides.count(1):
        flipped = [1 - s for s in sides]
        key = min(key, sorted(_cert_of(g, comp, flipped) for comp in connected_components(g)))
    return repr((g.n, key)).encode()


def _cert_of(g: Graph, comp: list[int], sides: list[int]) -> tuple:
    index = {v: i for i, v in enumerate(comp)}
    adj = [[index[w] for w in g.adj[v]] for v in comp]
    return _component_certificate(adj, [sides[v] for v in comp])
