"""Exact Wasserstein-1 distance between finitely supported measures on a graph.

Measures are scaled to integers by the lcm of their denominators and solved as
a transportation problem with successive shortest paths.  Every plan can be
checked against a dual certificate built from its own support.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .graph import INF, Graph, GraphError, bfs_distances


class TransportError(ValueError):
    pass


@dataclass(frozen=True)
class Measure:
    support: dict[int, Fraction]

    def __post_init__(self):
        if any(m < 0 for m in self.support.values()):
            raise TransportError("negative mass")
        if sum(self.support.values(), Fraction(0)) != 1:
            raise TransportError("total mass must be exactly 1")

    @classmethod
    def of(cls, masses: dict) -> "Measure":
        return cls({v: Fraction(m) for v, m in sorted(masses.items()) if m != 0})

    def atoms(self) -> list[tuple[int, Fraction]]:
        return sorted((v, m) for v, m in self.support.items() if m != 0)

    def __getitem__(self, v: int) -> Fraction:
        return self.support.get(v, Fraction(0))


@dataclass(frozen=True)
class TransportPlan:
    entries: dict[tuple[int, int], Fraction]
    cost: Fraction
    # (u, v) with u[x] + v[y] <= d(x, y), tight on the plan support
    dual: tuple[dict[int, Fraction], dict[int, Fraction]] | None = field(default=None, compare=False)


def vertex_measure(g: Graph, x: int, rho) -> Measure:
    """mu_x^rho: mass rho at x, (1 - rho)/d_x on each neighbour."""
    rho = Fraction(rho)
    if not 0 <= rho <= 1:
        raise TransportError(f"idleness {rho} outside [0, 1]")
    if not 0 <= x < g.n:
        raise GraphError(f"vertex {x} out of range")
    if rho == 1:
        return Measure({x: Fraction(1)})
    d = g.degree(x)
    if d == 0:
        raise TransportError(f"isolated vertex {x} needs idleness 1")
    masses = {w: (1 - rho) / d for w in g.neighbors(x)}
    if rho:
        masses[x] = rho
    return Measure(dict(sorted(masses.items())))


def _cost_matrix(g: Graph, sources, targets) -> list[list[int]]:
    rows = []
    for x in sources:
        dist = bfs_distances(g, x)
        row = []
        for y in targets:
            if dist[y] is INF:
                raise TransportError(f"vertices {x} and {y} lie in different components")
            row.append(dist[y])
        rows.append(row)
    return rows


def _bellman_ford(n_nodes, arcs, sources):
    """Shortest distances from ``sources`` (all at 0); None if a negative cycle exists."""
    dist: list = [None] * n_nodes
    pred: list = [None] * n_nodes
    for s in sources:
        dist[s] = 0
    for _ in range(n_nodes):
        changed = False
        for k, (a, b, w) in enumerate(arcs):
            if dist[a] is not None and (dist[b] is None or dist[a] + w < dist[b]):
                dist[b] = dist[a] + w
                pred[b] = k
                changed = True
        if not changed:
            return dist, pred
    return None, None


def _min_cost_transport(supply: list[int], demand: list[int], cost: list[list[int]]) -> list[list[int]]:
    """Integer transportation problem by successive shortest augmenting paths."""
    a, b = len(supply), len(demand)
    s, t = a + b, a + b + 1
    total = sum(supply)
    # arc list with paired reverse arcs: (tail, head, cost), capacity kept separately
    tail, head, wt, cap = [], [], [], []

    def add(u, v, c, w):
        for x, y, cc, ww in ((u, v, c, w), (v, u, 0, -w)):
            tail.append(x)
            head.append(y)
            cap.append(cc)
            wt.append(ww)

    for i in range(a):
        add(s, i, supply[i], 0)
    for i in range(a):
        for j in range(b):
            add(i, a + j, total, cost[i][j])
    for j in range(b):
        add(a + j, t, demand[j], 0)

    flow = 0
    while flow < total:
        residual = [(tail[k], head[k], wt[k]) for k in range(len(cap)) if cap[k] > 0]
        index = [k for k in range(len(cap)) if cap[k] > 0]
        dist, pred = _bellman_ford(a + b + 2, residual, [s])
        if dist is None or dist[t] is None:
            raise TransportError("transport problem infeasible")
        path, v = [], t
        while v != s:
            k = index[pred[v]]
            path.append(k)
            v = tail[k]
        push = min(min(cap[k] for k in path), total - flow)
        for k in path:
            cap[k] -= push
            cap[k ^ 1] += push
        flow += push

    plan = [[0] * b for _ in range(a)]
    base = 2 * a
    for i in range(a):
        for j in range(b):
            k = base + 2 * (i * b + j)
            plan[i][j] = cap[k ^ 1]
    return plan


def _dual_from_plan(xs, ys, cost, plan_mass):
    """Potentials certifying optimality of a plan, or None if it is not optimal.

    Shortest paths over arcs x->y (cost d) and y->x (cost -d where the plan moves
    mass) exist iff the plan admits no improving cycle; their distances p give
    u[x] = -p[x], v[y] = p[y] with u + v <= d and equality on the support.
    """
    a = len(xs)
    arcs = []
    for i in range(a):
        for j in range(len(ys)):
            arcs.append((i, a + j, cost[i][j]))
            if plan_mass[i][j] > 0:
                arcs.append((a + j, i, -cost[i][j]))
    dist, _ = _bellman_ford(a + len(ys), arcs, range(a + len(ys)))
    if dist is None:
        return None
    u = {x: Fraction(-dist[i]) for i, x in enumerate(xs)}
    v = {y: Fraction(dist[a + j]) for j, y in enumerate(ys)}
    return u, v


def wasserstein(g: Graph, mu1: Measure, mu2: Measure) -> tuple[Fraction, TransportPlan]:
    xs = [v for v, _ in mu1.atoms()]
    ys = [v for v, _ in mu2.atoms()]
    for v in xs + ys:
        if not 0 <= v < g.n:
            raise GraphError(f"support vertex {v} not in graph")
    cost = _cost_matrix(g, xs, ys)
    scale = lcm(*(m.denominator for _, m in mu1.atoms() + mu2.atoms()))
    supply = [int(m * scale) for _, m in mu1.atoms()]
    demand = [int(m * scale) for _, m in mu2.atoms()]
    flows = _min_cost_transport(supply, demand, cost)

    entries = {}
    total = 0
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            if flows[i][j]:
                entries[(x, y)] = Fraction(flows[i][j], scale)
                total += cost[i][j] * flows[i][j]
    value = Fraction(total, scale)
    dual = _dual_from_plan(xs, ys, cost, flows)
    if dual is None:
        raise TransportError("solver produced a plan without a dual certificate")
    return value, TransportPlan(entries, value, dual)


def plan_marginals(plan: TransportPlan) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    rows: dict[int, Fraction] = {}
    cols: dict[int, Fraction] = {}
    for (x, y), m in plan.entries.items():
        rows[x] = rows.get(x, Fraction(0)) + m
        cols[y] = cols.get(y, Fraction(0)) + m
    return rows, cols


def verify_plan_optimal(g: Graph, mu1: Measure, mu2: Measure, plan: TransportPlan) -> bool:
    """Check a plan against a dual certificate computed from the plan alone."""
    rows, cols = plan_marginals(plan)
    if any(m < 0 for m in plan.entries.values()):
        raise TransportError("negative plan entry")
    if {k: v for k, v in rows.items() if v} != dict(mu1.atoms()) or \
            {k: v for k, v in cols.items() if v} != dict(mu2.atoms()):
        raise TransportError("plan marginals do not match the measures")
    xs = [v for v, _ in mu1.atoms()]
    ys = [v for v, _ in mu2.atoms()]
    cost = _cost_matrix(g, xs, ys)
    primal = sum((cost[i][j] * plan.entries.get((x, y), 0)
                  for i, x in enumerate(xs) for j, y in enumerate(ys)), Fraction(0))
    if primal != plan.cost:
        return False
    mass = [[plan.entries.get((x, y), Fraction(0)) for y in ys] for x in xs]
    dual = _dual_from_plan(xs, ys, cost, mass)
    if dual is None:
        return False
    u, v = dual
    feasible = all(u[x] + v[y] <= cost[i][j] for i, x in enumerate(xs) for j, y in enumerate(ys))
    objective = sum((m * u[x] for x, m in mu1.atoms()), Fraction(0)) + \
        sum((m * v[y] for y, m in mu2.atoms()), Fraction(0))
    return feasible and objective == primal
