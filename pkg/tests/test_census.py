import json

import networkx as nx
import pytest

from llyconn.census import GraphResult, analyse_graph, connected_graphs, run_census
from llyconn.graph import BudgetExceeded, Graph, canonical_form


def atlas_connected(n):
    return [G for G in nx.graph_atlas_g() if G.number_of_nodes() == n and n and nx.is_connected(G)]


def test_enumeration_matches_graph_atlas():
    ours = connected_graphs(6)
    for n in range(1, 7):
        atlas = {canonical_form(Graph.from_edges(n, list(G.edges()))) for G in atlas_connected(n)}
        assert {canonical_form(g) for g in ours[n]} == atlas
        assert len(ours[n]) == len(atlas)


def test_census_up_to_five_has_no_counterexamples():
    report = run_census(5)
    assert report.ok and not report.counterexamples
    assert len(report.results) == 1 + 1 + 2 + 6 + 21


def test_census_six_counts_and_regular_subset():
    report = run_census(6)
    summary = report.summary()
    assert report.ok and summary["graphs"] == 143
    assert summary["nonnegative"] == sum(r.nonnegative for r in report.results)
    regular = run_census(6, regular_only=True)
    assert regular.ok and all(r.regular for r in regular.results)
    assert {r.graph6 for r in regular.results} == {r.graph6 for r in report.results if r.regular}


def test_census_budget():
    with pytest.raises(BudgetExceeded):
        run_census(7)
    with pytest.raises(BudgetExceeded):
        run_census(8, extended=True)


def test_parallel_census_is_identical():
    assert run_census(5, jobs=2).to_json() == run_census(5).to_json()


def test_counterexample_flag():
    fake = GraphResult("C~", 4, 6, 3, 2, True, True, {})
    assert fake.counterexample
    assert not GraphResult("C~", 4, 6, 3, 2, False, True, {}).counterexample


def test_negative_graph_is_not_flagged():
    # double star: the centre edge of a tree with two degree-3 ends is negative
    g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    res = analyse_graph(g)
    assert not res.nonnegative and not res.counterexample


def test_exhaustive_cut_mode_checks_more_cuts():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    one = analyse_graph(g)
    every = analyse_graph(g, all_cuts=True)
    assert every.checks["identities"].passed > one.checks["identities"].passed


def test_summary_json():
    summary = json.loads(run_census(4).to_json())
    assert summary["per_n"][-1] == {"n": 4, "graphs": 6, "nonnegative": 6}
    assert set(summary["cut_checks"]) >= {"identities", "cost_bound", "star_bound", "edge_star"}
