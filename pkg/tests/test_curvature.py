import json
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import complete, connected_graphs, cycle, path
from llyconn.curvature import (CurvatureError, cost_of_edge, curvature_profile, frac_from_json, kappa_from_cost,
                               kappa_lly, kappa_rho, lly_idleness)
from llyconn.graph import Edge, Graph
from llyconn.transport import vertex_measure
from oracles import transport_lp

F = Fraction


def oracle_kappa(g, x, y, rho):
    """kappa_rho / (1 - rho) with W from the LP oracle."""
    w = transport_lp(g, vertex_measure(g, x, rho), vertex_measure(g, y, rho))
    return (1 - w) / (1 - rho)


def petersen():
    return Graph.from_edges(10, list(nx.petersen_graph().edges()))


def k4_minus_edge():
    return Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def test_kappa_rho_examples():
    assert kappa_rho(cycle(5), 0, 1, 1) == 0
    assert kappa_rho(Graph.from_edges(3, complete(3)), 0, 1, F(1, 3)) == 1
    assert kappa_rho(cycle(5), 0, 1, F(1, 3)) == F(1, 3)
    # non-adjacent pair: W / d with d = 2
    assert kappa_rho(path(3), 0, 2, 0) == 1


def test_kappa_rho_errors():
    with pytest.raises(CurvatureError):
        kappa_rho(path(3), 1, 1, F(1, 2))
    with pytest.raises(CurvatureError):
        kappa_rho(Graph.from_edges(4, [(0, 1), (2, 3)]), 0, 2, F(1, 2))


@pytest.mark.parametrize("n", range(3, 9))
def test_complete_graph_edge(n):
    g = Graph.from_edges(n, complete(n))
    assert kappa_lly(g, 0, 1) == F(n, n - 1) == oracle_kappa(g, 0, 1, F(1, n))


@pytest.mark.parametrize("n,value", [(4, F(1)), (5, F(1, 2))] + [(n, F(0)) for n in range(6, 13)])
def test_cycle_edge(n, value):
    assert kappa_lly(cycle(n), 0, 1) == value == oracle_kappa(cycle(n), 0, 1, F(1, 3))


def test_cost_of_edge_examples():
    assert cost_of_edge(Graph.from_edges(3, complete(3)), Edge(0, 1)) == 0
    assert cost_of_edge(cycle(5), Edge(0, 1)) == 2
    assert cost_of_edge(cycle(6), Edge(0, 1)) == 3
    assert kappa_from_cost(2, 3) == 0
    with pytest.raises(CurvatureError):
        cost_of_edge(path(3), Edge(0, 1))


def test_kappa_lly_needs_an_edge():
    with pytest.raises(CurvatureError):
        kappa_lly(path(3), 0, 2)


def test_petersen_edges_share_one_value():
    g = petersen()
    report = curvature_profile(g)
    values = {r.kappa_lly for r in report.records}
    assert values == {oracle_kappa(g, 0, 1, F(1, 4))} == {F(0)}


def test_star_edges_share_one_value():
    g = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    values = {r.kappa_lly for r in curvature_profile(g).records}
    assert len(values) == 1
    assert values == {oracle_kappa(g, 0, 1, F(1, 5))}


def test_k4_minus_edge_two_classes():
    g = k4_minus_edge()
    report = curvature_profile(g)
    by_edge = {r.edge: r.kappa_lly for r in report.records}
    assert set(by_edge.values()) == {F(1), F(4, 3)}
    assert by_edge[Edge(2, 3)] == oracle_kappa(g, 2, 3, F(1, 4)) == F(4, 3)
    assert by_edge[Edge(0, 2)] == oracle_kappa(g, 0, 2, F(1, 4)) == F(1)


def test_lcm_idleness_lies_outside_linear_range():
    # degrees 2 and 3: rho = 1/(lcm + 1) = 1/7 is too small for the linear regime
    g = k4_minus_edge()
    assert lly_idleness(g, 0, 2) == F(1, 4)
    assert kappa_rho(g, 0, 2, F(1, 7)) / (1 - F(1, 7)) == F(2, 3)
    assert kappa_lly(g, 0, 2) == 1


@given(connected_graphs(max_n=9))
def test_linear_tail_and_larger_idleness_agree(g):
    for x, y in g.edges():
        k = kappa_lly(g, x, y)
        dx, dy = g.degree(x), g.degree(y)
        rho = max(F(1, dx + 1), F(1, dy + 1))
        assert kappa_rho(g, x, y, rho) / (1 - rho) == k
        for rho in (F(3, 4), F(9, 10)):
            if rho >= lly_idleness(g, x, y):
                assert kappa_rho(g, x, y, rho) / (1 - rho) == k


@given(connected_graphs(max_n=9))
def test_equal_degree_edges_follow_cost_formula(g):
    for e in g.edges():
        if g.degree(e.u) == g.degree(e.v):
            assert kappa_lly(g, *e) == kappa_from_cost(g.degree(e.u), cost_of_edge(g, e))


@given(connected_graphs(max_n=8), st.randoms(use_true_random=False))
def test_curvature_is_relabelling_equivariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    for x, y in g.edges():
        assert kappa_lly(g, x, y) == kappa_lly(h, perm[x], perm[y])


def test_profile_covers_every_edge_once_and_flags():
    g = petersen()
    report = curvature_profile(g)
    assert [r.edge for r in report.records] == g.edges()
    assert report.complete and report.nonnegative and report.min_curvature == 0


def test_profile_early_exit_stops_at_first_negative():
    # a long cycle with a pendant triangle-free tree has negative edges
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 3)])
    full = curvature_profile(g)
    assert not full.nonnegative
    part = curvature_profile(g, early_exit=True)
    first_bad = next(i for i, r in enumerate(full.records) if r.kappa_lly < 0)
    assert len(part.records) == first_bad + 1
    assert part.records == full.records[: first_bad + 1]
    assert part.complete == (first_bad + 1 == len(full.records))


def test_profile_rejects_disconnected():
    with pytest.raises(CurvatureError):
        curvature_profile(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_parallel_profile_is_identical():
    g = petersen()
    assert curvature_profile(g, jobs=2).to_json() == curvature_profile(g).to_json()


def test_report_serialisation():
    report = curvature_profile(k4_minus_edge())
    data = json.loads(report.to_json())
    assert data["edges"][0]["edge"] == [0, 2]
    assert frac_from_json(data["min_curvature"]) == 1
    rows = report.to_csv().splitlines()
    assert rows[0].startswith("u,v,d_u,d_v") and len(rows) == 6
