"""Ollivier and Lin-Lu-Yau curvature of edges, computed exactly."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import INF, Edge, Graph, GraphError, bfs_distances, is_connected
from .transport import vertex_measure, wasserstein


class CurvatureError(ValueError):
    pass


class LinearityError(ArithmeticError):
    """kappa_rho / (1 - rho) disagreed at two points of the assumed linear range."""


def kappa_rho(g: Graph, x: int, y: int, rho) -> Fraction:
    if x == y:
        raise CurvatureError("kappa_rho needs two distinct vertices")
    d = bfs_distances(g, x)[y]
    if d is INF:
        raise CurvatureError(f"{x} and {y} are in different components")
    w, _ = wasserstein(g, vertex_measure(g, x, rho), vertex_measure(g, y, rho))
    return 1 - w / d


def lly_idleness(g: Graph, x: int, y: int) -> Fraction:
    """Idleness from which kappa_rho is linear up to rho = 1: 1/(max(d_x, d_y) + 1)."""
    return Fraction(1, max(g.degree(x), g.degree(y)) + 1)


def kappa_lly(g: Graph, x: int, y: int) -> Fraction:
    """Lin-Lu-Yau curvature of the edge xy.

    Evaluated as kappa_rho / (1 - rho) at rho* = 1/(max(d_x, d_y) + 1) and
    cross-checked at (1 + rho*)/2.  kappa_rho is concave with kappa_1 = 0, so
    agreement at two points forces linearity on [rho*, 1]; a disagreement
    raises LinearityError.
    """
    if not g.has_edge(x, y):
        raise CurvatureError(f"({x}, {y}) is not an edge; only edge curvature is supported")
    rho = lly_idleness(g, x, y)
    value = kappa_rho(g, x, y, rho) / (1 - rho)
    rho2 = (1 + rho) / 2
    check = kappa_rho(g, x, y, rho2) / (1 - rho2)
    if value != check:
        raise LinearityError(f"edge ({x}, {y}): {value} at rho={rho} but {check} at rho={rho2}")
    return value


def cost_of_edge(g: Graph, e: Edge) -> int:
    """(D+1) * W between the uniform measures at the ends of an equal-degree edge."""
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"{e} is not an edge")
    D = g.degree(u)
    if g.degree(v) != D:
        raise CurvatureError(f"cost(e) needs equal endpoint degrees, got {D} and {g.degree(v)}")
    rho = Fraction(1, D + 1)
    w, _ = wasserstein(g, vertex_measure(g, u, rho), vertex_measure(g, v, rho))
    c = w * (D + 1)
    assert c.denominator == 1
    return int(c)


def kappa_from_cost(D: int, cost: int) -> Fraction:
    return Fraction(D + 1, D) * (1 - Fraction(cost, D + 1))


@dataclass(frozen=True)
class EdgeCurvature:
    edge: Edge
    d_u: int
    d_v: int
    rho_used: Fraction
    kappa_lly: Fraction


@dataclass
class CurvatureReport:
    records: list[EdgeCurvature]
    complete: bool = True
    n: int = 0
    m: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def min_curvature(self) -> Fraction | None:
        return min((r.kappa_lly for r in self.records), default=None)

    @property
    def nonnegative(self) -> bool:
        return all(r.kappa_lly >= 0 for r in self.records)

    def to_dict(self) -> dict:
        mn = self.min_curvature
        return {
            "n": self.n,
            "m": self.m,
            "complete": self.complete,
            "min_curvature": None if mn is None else frac_json(mn),
            "nonnegative": self.nonnegative,
            "edges": [
                {"edge": [r.edge.u, r.edge.v], "d_u": r.d_u, "d_v": r.d_v,
                 "rho_used": frac_json(r.rho_used), "kappa_lly": frac_json(r.kappa_lly)}
                for r in self.records
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", "d_u", "d_v", "rho_num", "rho_den", "kappa_num", "kappa_den"])
        for r in self.records:
            w.writerow([r.edge.u, r.edge.v, r.d_u, r.d_v, r.rho_used.numerator, r.rho_used.denominator,
                        r.kappa_lly.numerator, r.kappa_lly.denominator])
        return buf.getvalue()


def frac_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def frac_from_json(d: dict) -> Fraction:
    return Fraction(d["num"], d["den"])


def edge_record(g: Graph, e: Edge) -> EdgeCurvature:
    u, v = e
    return EdgeCurvature(e, g.degree(u), g.degree(v), lly_idleness(g, u, v), kappa_lly(g, u, v))


def _edge_task(args):
    g, e = args
    return edge_record(g, e)


def curvature_profile(g: Graph, early_exit: bool = False, jobs: int = 1, edges=None) -> CurvatureReport:
    """Curvature of every edge (or of ``edges``), in sorted edge order.

    With ``early_exit`` the scan stops at the first negative edge and the report
    is flagged incomplete.
    """
    if not is_connected(g):
        raise CurvatureError("curvature profile needs a connected graph")
    todo = g.edges() if edges is None else sorted(Edge.of(*e) for e in edges)
    records: list[EdgeCurvature] = []
    complete = True
    if jobs > 1 and not early_exit:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_edge_task, [(g, e) for e in todo], chunksize=8))
    else:
        for e in todo:
            rec = edge_record(g, e)
            records.append(rec)
            if early_exit and rec.kappa_lly < 0:
                complete = len(records) == len(todo)
                break
    return CurvatureReport(records, complete, g.n, g.m)
