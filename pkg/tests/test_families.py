import json

import pytest

from llyconn.connectivity import CutCertificate, cut_bipartite
from llyconn.families import (FamilySpec, Insert, SpecError, certify_interior, generate, hub_facts, load_spec,
                              pairing_sweep, shift_key, verify_family)
from llyconn.graph import Edge
from llyconn.graphio import to_adjlist


def degrees_of_layer(t, i):
    return {t.graph.degree(v) for v, k in enumerate(t.keys) if k[0] == "L" and k[1] == i}


def interior_vertices(t, certified):
    g = t.graph
    return [v for v in range(g.n) if all(Edge.of(v, w) in certified for w in g.adj[v])]


def test_gn_layer_counts_and_degrees():
    spec = FamilySpec("Gn", 3, 5)
    t = generate(spec)
    assert t.graph.n == 15 and t.graph.m == 5 * 3 + 4 * 3
    assert degrees_of_layer(t, 2) == {4}
    assert degrees_of_layer(t, 0) == {3}


def test_hub_insert_degrees():
    spec = FamilySpec("Gn", 2, 7, (Insert("P", 3),))
    t = generate(spec)
    hub = t.hubs[0]
    assert t.graph.degree(hub) == 4
    certified = certify_interior(spec, t)
    others = {t.graph.degree(v) for v in interior_vertices(t, certified) if v != hub}
    assert others == {3}


def test_g42_interior_degree():
    t = generate(FamilySpec("G42", layers=6))
    assert all(degrees_of_layer(t, i) == {5} for i in range(1, 5))


def test_g3star_layers():
    t = generate(FamilySpec("G3Star", layers=6))
    assert all(degrees_of_layer(t, i) == {4} for i in range(1, 5))


def test_k_chain_shape():
    spec = FamilySpec("Gn", 4, 6, (Insert("K", 2, 3),))
    t = generate(spec)
    chain = [v for v, k in enumerate(t.keys) if k[0] == "K"]
    assert len(chain) == 2 * 3 + 2
    assert all(t.graph.degree(v) == 5 for v in chain)
    # each chain vertex sits in one or two K_4's
    sub, _ = t.graph.induced(chain)
    assert sub.m == 4 + 3 * 4


def test_certify_interior_examples():
    spec = FamilySpec("Gn", 3, 7)
    t = generate(spec)
    certified = certify_interior(spec, t)
    middle = [v for v, k in enumerate(t.keys) if k[1] == 3]
    assert all(Edge.of(a, b) in certified for a in middle for b in t.graph.adj[a])
    end = [v for v, k in enumerate(t.keys) if k[1] == 0]
    assert not any(Edge.of(a, b) in certified for a in end for b in t.graph.adj[a])


def test_hub_edges_certified_with_three_layers_each_side():
    spec = FamilySpec("Gn", 3, 6, (Insert("P", 2),))
    t = generate(spec)
    certified = certify_interior(spec, t)
    hub = t.hubs[0]
    assert all(Edge.of(hub, w) in certified for w in t.graph.adj[hub])


@pytest.mark.parametrize("n", range(1, 7))
def test_gn_verification(n):
    report = verify_family(FamilySpec("Gn", n, 8))
    assert report.ok, {k: c.failures for k, c in report.checks.items() if not c.ok}
    assert {c["class"] for c in report.cuts} == {f"H1({n})"}
    assert report.delta == n + 1 and report.interior_regular


def test_g3star_verification():
    report = verify_family(FamilySpec("G3Star", layers=8))
    assert report.ok and report.min_curvature >= 0 and report.delta == 4
    assert {c["class"] for c in report.cuts} == {"H4(3)"}


def test_g42_verification():
    report = verify_family(FamilySpec("G42", layers=7))
    assert report.ok and {c["class"] for c in report.cuts} == {"H3(4)"}


def test_hub_cut_in_g5():
    spec = FamilySpec("Gn", 5, 7, (Insert("P", 3),))
    report = verify_family(spec)
    assert report.ok
    assert report.checks["hub_facts"].passed == 2
    t = generate(spec)
    hub = t.hubs[0]
    left = {v for b in t.blocks for v in b if v < hub}
    for side in (left, left | {hub}):
        cert = CutCertificate.from_side(t.graph, side)
        assert cert.size == 5 and cut_bipartite(t.graph, cert).h.m == 5
        facts = hub_facts(t.graph, cert, hub)
        assert facts == {"centre": hub, "r": 5, "centre_degree_2r": True, "leaf_degree_r_plus_1": True,
                         "leaves_complete": True}


def test_k_operation_keeps_degree_five():
    for m in (1, 2):
        spec = FamilySpec("Gn", 4, 7, (Insert("K", 3, m),))
        t = generate(spec)
        certified = certify_interior(spec, t)
        assert {t.graph.degree(v) for v in interior_vertices(t, certified)} == {5}
        assert verify_family(spec).ok


def test_mixed_inserts():
    report = verify_family(FamilySpec("Gn", 4, 8, (Insert("K", 2, 1), Insert("P", 5))))
    assert report.ok
    assert {"H1(4)", "H2(4)", "K22", "Star"} <= {c["class"] for c in report.cuts}


def test_curvature_stable_when_window_grows():
    specs = (FamilySpec("Gn", 3, 6), FamilySpec("G42", layers=6), FamilySpec("G3Star", layers=6),
             FamilySpec("Gn", 2, 6, (Insert("P", 2),)), FamilySpec("Gn", 4, 6, (Insert("K", 2, 2),)))
    for spec in specs:
        small = verify_family(spec).curvature
        large = verify_family(spec.extended()).curvature
        assert small
        for (a, b), value in small.items():
            assert large[(shift_key(a), shift_key(b))] == value


def test_pairing_sweep_reports_all_nine():
    rows = pairing_sweep(FamilySpec("Gn", 4, 7, (Insert("K", 3, 1),)))
    assert len(rows) == 9 and all(r["ok"] for r in rows)


def test_cylinder_mode():
    report = verify_family(FamilySpec("Gn", 4, 8, cylinder=True))
    assert report.ok and report.interior_edges == generate(FamilySpec("Gn", 4, 8, cylinder=True)).graph.m
    assert report.cuts == []


def test_spec_json_round_trip():
    text = json.dumps({"base": "Gn", "n": 4, "layers": 9,
                       "inserts": [{"op": "K", "position": 2, "m": 2}, {"op": "P", "position": 5}]})
    spec = FamilySpec.from_json(text)
    assert spec.inserts == (Insert("K", 2, 2), Insert("P", 5))
    assert FamilySpec.from_dict(spec.to_dict()) == spec


@pytest.mark.parametrize("doc", [
    {"base": "Gx", "layers": 5},
    {"base": "Gn", "n": 3, "layers": 2},
    {"base": "Gn", "n": 0, "layers": 5},
    {"base": "Gn", "n": 3, "layers": 5, "inserts": [{"op": "K", "position": 1, "m": 1}]},
    {"base": "Gn", "n": 4, "layers": 5, "inserts": [{"op": "K", "position": 1, "m": 0}]},
    {"base": "Gn", "n": 4, "layers": 5, "inserts": [{"op": "P", "position": 2}, {"op": "P", "position": 2}]},
    {"base": "Gn", "n": 4, "layers": 5, "inserts": [{"op": "P", "position": 4}]},
    {"base": "G42", "layers": 5, "inserts": [{"op": "P", "position": 2}]},
    {"base": "Gn", "n": 4, "layers": 5, "inserts": [{"op": "Q", "position": 1}]},
    {"base": "FromFile", "path": "x.adj"},
    {"layers": 5},
])
def test_malformed_specs(doc):
    with pytest.raises(SpecError):
        FamilySpec.from_dict(doc)


def test_invalid_json():
    with pytest.raises(SpecError):
        FamilySpec.from_json("{not json")


def test_from_file_spec(tmp_path):
    base = FamilySpec("Gn", 3, 7)
    t = generate(base)
    (tmp_path / "g3.adj").write_text(to_adjlist(t.graph))
    certified = certify_interior(base, t)
    inner = interior_vertices(t, certified)
    window = sorted({v for e in certified for v in e})
    left = [v for v, k in enumerate(t.keys) if k[1] <= 2]
    doc = {"base": "FromFile", "path": "g3.adj", "delta": 4,
           "interior": window, "cuts": [left]}
    (tmp_path / "spec.json").write_text(json.dumps(doc))
    spec = load_spec(tmp_path / "spec.json")
    report = verify_family(spec)
    assert inner and report.ok, {k: c.failures for k, c in report.checks.items() if not c.ok}
    assert [c["class"] for c in report.cuts] == ["H1(3)"]
