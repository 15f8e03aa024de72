"""Finite truncations of the layered rigid families and their verification.

A truncation is a path of vertex blocks: base layers L_0..L_{N-1}, with any
inserted hub vertex (P) or K_4-chain pair blocks (K) sitting between the two
layers they replace the connector of.  Edges only join a block to itself or
to the next block, so every block boundary is an edge cut.

Vertex keys:
  ('L', i, j)     vertex j of layer i
  ('P', k)        hub inserted at position k (between L_k and L_{k+1})
  ('K', k, j, s)  vertex s of pair block j of the K_4 chain at position k
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path

from .bipartite import classify
from .checks import Check
from .connectivity import (CutCertificate, claim_cost_bound, cut_bipartite, cut_quantities,
                           global_min_cut, edge_star_check, quantity_identities_hold, star_cut_bound)
from .curvature import curvature_profile, frac_json
from .graph import Edge, Graph, GraphError, bfs_distances, is_star
from .graphio import read_graph

BASES = ("Gn", "G3Star", "G42", "FromFile")

# inter-layer connectors as (vertex in L_i, vertex in L_{i+1})
G3STAR_LINKS = ((0, 0), (0, 1), (1, 1))                  # a~a', a~b', b~b'
G42_LINKS = ((0, 1), (0, 2), (1, 3), (2, 3))             # h~m1', h~m2', m1~t', m2~t'

# how the 4 layer vertices split between the 2 outer vertices of a K_4 chain
PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class Insert:
    op: str                 # "P" or "K"
    position: int
    m: int = 0
    pairing: tuple[int, int] = (0, 0)

    def to_dict(self) -> dict:
        d = {"op": self.op, "position": self.position}
        if self.op == "K":
            d["m"] = self.m
            d["pairing"] = list(self.pairing)
        return d


@dataclass(frozen=True)
class FamilySpec:
    base: str
    n: int = 0
    layers: int = 5
    inserts: tuple[Insert, ...] = ()
    cylinder: bool = False
    # FromFile only
    path: str | None = None
    interior: tuple[int, ...] | None = None
    delta: int | None = None
    cuts: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.base not in BASES:
            raise SpecError(f"unknown base {self.base!r}")
        if self.base == "FromFile":
            if not self.path or self.delta is None:
                raise SpecError("FromFile needs path and delta")
            return
        if self.layers < 3:
            raise SpecError("need at least 3 layers")
        if self.base == "Gn" and self.n < 1:
            raise SpecError("Gn needs n >= 1")
        last = self.layers - 1 if self.cylinder else self.layers - 2
        prev = -1
        for ins in self.inserts:
            if ins.op not in ("P", "K"):
                raise SpecError(f"unknown insert op {ins.op!r}")
            if not prev < ins.position <= last:
                raise SpecError("insert positions must be strictly increasing inter-layer cuts")
            prev = ins.position
            if self.base != "Gn":
                raise SpecError("inserts apply to the Gn base only")
            if ins.op == "K":
                if self.n != 4:
                    raise SpecError("K-operation is defined on G_4 only")
                if ins.m < 1:
                    raise SpecError("K-operation needs m >= 1")
                if any(p not in (0, 1, 2) for p in ins.pairing):
                    raise SpecError("pairing index must be 0, 1 or 2")

    @property
    def layer_size(self) -> int:
        return {"Gn": self.n, "G3Star": 2, "G42": 4}[self.base]

    @property
    def claimed_delta(self) -> int:
        if self.base == "Gn":
            return self.n + 1
        if self.base == "G3Star":
            return 4
        if self.base == "G42":
            return 5
        return self.delta

    def label(self) -> str:
        if self.base == "FromFile":
            return f"FromFile({self.path})"
        name = f"Gn({self.n})" if self.base == "Gn" else self.base
        ops = "".join(f" P@{i.position}" if i.op == "P" else f" K{i.m}@{i.position}" for i in self.inserts)
        return f"{name} L={self.layers}{ops}{' cyl' if self.cylinder else ''}"

    def to_dict(self) -> dict:
        d = {"base": self.base}
        if self.base == "FromFile":
            d.update(path=self.path, delta=self.delta, interior=list(self.interior or []),
                     cuts=[list(c) for c in self.cuts])
            return d
        if self.base == "Gn":
            d["n"] = self.n
        d["layers"] = self.layers
        d["inserts"] = [i.to_dict() for i in self.inserts]
        if self.cylinder:
            d["cylinder"] = True
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        try:
            inserts = tuple(Insert(i["op"], int(i["position"]), int(i.get("m", 0)),
                                   tuple(i.get("pairing", (0, 0))))
                            for i in d.get("inserts", []))
            interior = d.get("interior")
            return cls(base=d["base"], n=int(d.get("n", 0)), layers=int(d.get("layers", 5)),
                       inserts=inserts, cylinder=bool(d.get("cylinder", False)), path=d.get("path"),
                       interior=None if interior is None else tuple(interior),
                       delta=d.get("delta"), cuts=tuple(tuple(c) for c in d.get("cuts", [])))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(f"malformed family spec: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "FamilySpec":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from None

    def with_layers(self, layers: int) -> "FamilySpec":
        return FamilySpec(self.base, self.n, layers, self.inserts, self.cylinder)

    def extended(self) -> "FamilySpec":
        """One more layer on each end; inserts follow their layers."""
        shifted = tuple(Insert(i.op, i.position + 1, i.m, i.pairing) for i in self.inserts)
        return FamilySpec(self.base, self.n, self.layers + 2, shifted, self.cylinder)


@dataclass
class Truncation:
    graph: Graph
    keys: list[tuple]
    blocks: list[list[int]]
    hubs: list[int] = field(default_factory=list)
    boundary_margin: int = 1
    cylinder: bool = False

    def index(self) -> dict[tuple, int]:
        return {k: v for v, k in enumerate(self.keys)}


def _layer_links(spec: FamilySpec):
    if spec.base == "Gn":
        return tuple((j, j) for j in range(spec.n))
    return G3STAR_LINKS if spec.base == "G3Star" else G42_LINKS


def generate(spec: FamilySpec) -> Truncation:
    if spec.base == "FromFile":
        g = read_graph(spec.path)
        return Truncation(g, [("V", v) for v in range(g.n)], [list(range(g.n))])

    size = spec.layer_size
    links = _layer_links(spec)
    at = {i.position: i for i in spec.inserts}
    block_keys: list[list[tuple]] = []
    edges: list[tuple[tuple, tuple]] = []

    def layer(i):
        return [("L", i % spec.layers, j) for j in range(size)]

    for i in range(spec.layers):
        block_keys.append(layer(i))
        if spec.base == "G3Star":
            edges.append((("L", i, 0), ("L", i, 1)))
        else:
            edges += [(("L", i, a), ("L", i, b)) for a in range(size) for b in range(a + 1, size)]
        if i == spec.layers - 1 and not spec.cylinder:
            break
        left, right = layer(i), layer(i + 1)
        ins = at.get(i)
        if ins is None:
            edges += [(left[a], right[b]) for a, b in links]
        elif ins.op == "P":
            hub = ("P", i)
            block_keys.append([hub])
            edges += [(v, hub) for v in left + right]
        else:
            pairs = [[("K", i, j, 0), ("K", i, j, 1)] for j in range(ins.m + 1)]
            block_keys += pairs
            # consecutive K_4's share the edge inside their common pair
            edges += [(a, b) for a, b in pairs]
            for j in range(ins.m):
                edges += [(a, b) for a in pairs[j] for b in pairs[j + 1]]
            for s in (0, 1):
                edges += [(left[j], pairs[0][s]) for j in PAIRINGS[ins.pairing[0]][s]]
                edges += [(pairs[-1][s], right[j]) for j in PAIRINGS[ins.pairing[1]][s]]

    keys = [k for block in block_keys for k in block]
    index = {k: v for v, k in enumerate(keys)}
    g = Graph.from_edges(len(keys), [(index[a], index[b]) for a, b in edges])
    blocks = [[index[k] for k in block] for block in block_keys]
    hubs = [index[k] for k in keys if k[0] == "P"]
    return Truncation(g, keys, blocks, hubs, cylinder=spec.cylinder)


def shift_key(key: tuple) -> tuple:
    """Key of the same vertex after one layer is prepended."""
    if key[0] == "L":
        return ("L", key[1] + 1, key[2])
    if key[0] == "P":
        return ("P", key[1] + 1)
    return ("K", key[1] + 1, key[2], key[3])


def certify_interior(spec: FamilySpec, t: Truncation) -> set[Edge]:
    """Edges whose closed neighbourhoods and local distances survive adding a layer at each end."""
    g = t.graph
    if spec.base == "FromFile":
        inside = set(spec.interior or range(g.n))
        return {e for e in g.edges() if e.u in inside and e.v in inside}
    if spec.cylinder:
        return set(g.edges())
    big = generate(spec.extended())
    big_index = big.index()
    to_big = [big_index[shift_key(k)] for k in t.keys]
    dist = [bfs_distances(g, v) for v in range(g.n)]
    big_dist = {}

    def bd(v):
        if v not in big_dist:
            big_dist[v] = bfs_distances(big.graph, v)
        return big_dist[v]

    def same_ball(v):
        return sorted(to_big[w] for w in g.adj[v]) == list(big.graph.adj[to_big[v]])

    certified = set()
    for e in g.edges():
        if not (same_ball(e.u) and same_ball(e.v)):
            continue
        ball = sorted(g.ball(e.u) | g.ball(e.v))
        if all(dist[a][b] == bd(to_big[a])[to_big[b]] for a in ball for b in ball):
            certified.add(e)
    return certified


# --- verification ----------------------------------------------------------

CHECK_NAMES = ("curvature_nonnegative", "interior_degree", "cut_size", "cut_rigid", "cut_sides_complete",
               "cost_bound", "identities", "edge_star", "star_bound", "hub_facts")


@dataclass
class FamilyReport:
    spec: FamilySpec
    n: int
    m: int
    delta: int
    interior_edges: int
    min_curvature: Fraction | None
    interior_regular: bool
    checks: dict[str, Check]
    cuts: list[dict] = field(default_factory=list)
    curvature: dict[tuple, Fraction] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "family": self.spec.label(),
            "spec": self.spec.to_dict(),
            "n": self.n, "m": self.m, "delta": self.delta,
            "interior_edges": self.interior_edges,
            "min_interior_curvature": None if self.min_curvature is None else frac_json(self.min_curvature),
            "interior_regular": self.interior_regular,
            "cuts": self.cuts,
            "checks": {k: c.to_dict() for k, c in self.checks.items()},
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def window_min_cut(g: Graph, cert: CutCertificate, interior_vertices: set[int]) -> int:
    """Global min cut after merging the non-interior vertices of each side into one node."""
    ids: dict[int, int] = {}
    nxt = 0
    for side in (cert.side_x, cert.side_y):
        outside = [v for v in side if v not in interior_vertices]
        if outside:
            for v in outside:
                ids[v] = nxt
            nxt += 1
    for v in sorted(interior_vertices):
        ids[v] = nxt
        nxt += 1
    weights: dict[tuple[int, int], int] = {}
    for a, b in g.edges():
        x, y = ids[a], ids[b]
        if x != y:
            key = (min(x, y), max(x, y))
            weights[key] = weights.get(key, 0) + 1
    value, _ = global_min_cut(nxt, [(a, b, w) for (a, b), w in weights.items()])
    return value


def hub_facts(g: Graph, cert: CutCertificate, centre_vertex: int | None = None) -> dict:
    """Degree facts at a star cut: centre degree 2r, leaves of degree r+1 forming a clique."""
    cb = cut_bipartite(g, cert)
    h = cb.h
    if centre_vertex is None:
        centre = max(range(h.n), key=lambda v: (h.degree(v), g.degree(cb.to_g(v))))
    else:
        centre = cb.from_g(centre_vertex)
    leaves = [cb.to_g(v) for v in h.adj[centre]]
    x, r = cb.to_g(centre), cb.r
    return {"centre": x, "r": r,
            "centre_degree_2r": g.degree(x) == 2 * r,
            "leaf_degree_r_plus_1": all(g.degree(y) == r + 1 for y in leaves),
            "leaves_complete": g.is_complete_on(leaves)}


def _cuts_to_check(spec: FamilySpec, t: Truncation) -> list[CutCertificate]:
    g = t.graph
    if spec.base == "FromFile":
        return [CutCertificate.from_side(g, side) for side in spec.cuts]
    out, left = [], set()
    for block in t.blocks[:-1]:
        left |= set(block)
        out.append(CutCertificate.from_side(g, left))
    return out


def verify_family(spec: FamilySpec, jobs: int = 1) -> FamilyReport:
    t = generate(spec)
    g = t.graph
    delta = spec.claimed_delta
    interior = certify_interior(spec, t)
    checks = {name: Check() for name in CHECK_NAMES}

    profile = curvature_profile(g, edges=sorted(interior), jobs=jobs)
    kappa = {}
    for rec in profile.records:
        kappa[rec.edge] = rec.kappa_lly
        checks["curvature_nonnegative"].record(rec.kappa_lly >= 0, {"edge": list(rec.edge),
                                                                    "kappa": frac_json(rec.kappa_lly)})

    inner = {v for v in range(g.n) if g.adj[v] and all(Edge.of(v, w) in interior for w in g.adj[v])}
    degrees = sorted({g.degree(v) for v in inner})
    if degrees:
        checks["interior_degree"].record(degrees[0] == delta, {"min_degree": degrees[0], "claimed": delta})
    else:
        checks["interior_degree"].record(False, {"reason": "no interior vertices"})

    cut_rows = []
    if not spec.cylinder:
        for cert in _cuts_to_check(spec, t):
            if not cert.cut_edges or not all(e in interior for e in cert.cut_edges):
                continue
            cut_rows.append(_verify_cut(g, cert, inner, delta, kappa, checks))
        for hub in t.hubs:
            for cert in _hub_cuts(t, hub):
                facts = hub_facts(g, cert, hub)
                ok = facts["centre_degree_2r"] and facts["leaf_degree_r_plus_1"] and facts["leaves_complete"]
                checks["hub_facts"].record(ok and facts["centre"] == hub, facts)

    return FamilyReport(spec, g.n, g.m, delta, len(interior), profile.min_curvature,
                        len(degrees) == 1 or bool(t.hubs), checks, cut_rows,
                        {(t.keys[e.u], t.keys[e.v]): k for e, k in kappa.items()})


def _hub_cuts(t: Truncation, hub: int) -> list[CutCertificate]:
    pos = next(i for i, b in enumerate(t.blocks) if b == [hub])
    left = set(v for b in t.blocks[:pos] for v in b)
    return [CutCertificate.from_side(t.graph, left), CutCertificate.from_side(t.graph, left | {hub})]


def _verify_cut(g: Graph, cert: CutCertificate, inner: set[int], delta: int, kappa: dict, checks) -> dict:
    edges = [list(e) for e in cert.cut_edges]
    size_ok = cert.size == delta - 1
    window = window_min_cut(g, cert, inner)
    checks["cut_size"].record(size_ok and window == delta - 1,
                              {"cut": edges, "size": cert.size, "window_min_cut": window})
    cb = cut_bipartite(g, cert)
    cls = classify(cb.h)
    star = is_star(cb.h)
    row = {"cut": edges, "size": cert.size, "class": str(cls), "p": cb.p, "q": cb.q}
    if cls.rigid:
        checks["cut_rigid"].record(True)
    elif star:
        facts = hub_facts(g, cert)
        ok = facts["centre_degree_2r"] and facts["leaf_degree_r_plus_1"] and facts["leaves_complete"]
        checks["cut_rigid"].record(ok, {"cut": edges, "class": str(cls), "facts": facts})
        row["star_facts"] = ok
    else:
        checks["cut_rigid"].record(False, {"cut": edges, "class": str(cls)})
    a = [cb.to_g(v) for v in cb.part_a]
    b = [cb.to_g(v) for v in cb.part_b]
    checks["cut_sides_complete"].record(g.is_complete_on(a) and g.is_complete_on(b), {"cut": edges})

    for e in cert.cut_edges:
        cq = cut_quantities(cb, cb.edge_from_g(e))
        checks["identities"].record(quantity_identities_hold(cb, cq), {"edge": list(e)})
        if g.degree(e.u) == delta == g.degree(e.v):
            res = claim_cost_bound(g, cert, e, delta)
            checks["cost_bound"].record(res["holds"], res)
            verdict = edge_star_check(g, cert, e, kappa[e], delta)
            if verdict is not None:
                checks["edge_star"].record(verdict, {"edge": list(e)})
        if star and cb.r <= delta - 1:
            res = star_cut_bound(g, cert, e, delta)
            checks["star_bound"].record(res["holds"], {"edge": res["edge"], "W": frac_json(res["W"]),
                                                       "bound": frac_json(res["bound"])})
    return row


def pairing_sweep(spec: FamilySpec, jobs: int = 1) -> list[dict]:
    """Run verify_family for every left/right pairing of every K-operation."""
    ks = [i for i, ins in enumerate(spec.inserts) if ins.op == "K"]
    out = []
    for choice in product(range(9), repeat=len(ks)):
        inserts = list(spec.inserts)
        for idx, c in zip(ks, choice):
            ins = inserts[idx]
            inserts[idx] = Insert("K", ins.position, ins.m, (c // 3, c % 3))
        variant = FamilySpec(spec.base, spec.n, spec.layers, tuple(inserts), spec.cylinder)
        rep = verify_family(variant, jobs=jobs)
        out.append({"pairings": [list(inserts[i].pairing) for i in ks], "ok": rep.ok,
                    "min_interior_curvature": None if rep.min_curvature is None else frac_json(rep.min_curvature)})
    return out


def load_spec(path) -> FamilySpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from None
    spec = FamilySpec.from_json(text)
    if spec.base == "FromFile" and not Path(spec.path).is_absolute():
        spec = FamilySpec.from_dict({**spec.to_dict(), "path": str(Path(path).parent / spec.path)})
    return spec
