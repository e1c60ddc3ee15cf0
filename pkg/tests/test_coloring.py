import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epgclique.cliques import max_clique_exact
from epgclique.coloring import (CanonicalInterval, canonical_intervals, clique_or_stable_set, degeneracy_order,
                                edge_bound_check, greedy_color, meets_ramsey_bound, segment_graphs)
from epgclique.grid import DerivedGraph, EpgRepresentation, derive_graph
from epgclique.testkit import gen_kn_minus_matching

from _support import random_bk


def cycle(n):
    vs = [f"c{i}" for i in range(n)]
    return DerivedGraph.from_edges(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


# --- canonical intervals and segment graphs -------------------------------------------------

def test_overlapping_revisit_is_merged():
    ivs = canonical_intervals({"p": [(0, 0), (0, 5), (1, 5), (1, 2), (0, 2), (0, 3)]})
    row0 = [iv for iv in ivs if iv.line == ("row", 0)]
    assert row0 == [CanonicalInterval("p", ("row", 0), 0, 5)]


def test_disjoint_revisit_is_kept():
    ivs = canonical_intervals({"p": [(0, 0), (0, 4), (2, 4), (2, 6), (0, 6), (0, 9)]})
    row0 = [(iv.lo, iv.hi) for iv in ivs if iv.line == ("row", 0)]
    assert row0 == [(0, 4), (6, 9)]


def test_two_bend_path_has_three_intervals():
    rep = EpgRepresentation.from_corners({"z": [(2, 1), (2, 4), (5, 4), (5, 7)]})
    assert len(canonical_intervals(rep)) == 3


def test_single_path_segment_graph_is_edgeless():
    sg = segment_graphs(EpgRepresentation.from_corners({"z": [(2, 1), (2, 4), (5, 4), (5, 7)]}))
    assert sg.edge_count == 0 and sg.omega == sg.q == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 4), st.integers(1, 25))
def test_segment_graph_claims(seed, k, n):
    rep = random_bk(seed, k, n)
    g = derive_graph(rep)
    sg = segment_graphs(rep)
    assert sg.edge_count >= g.edge_count()
    assert sg.omega == sg.q
    assert sg.vertex_count <= (k + 1) * n
    for line, group in sg.lines.items():
        for vid in {iv.vertex_id for iv in group}:
            mine = sorted((iv.lo, iv.hi) for iv in group if iv.vertex_id == vid)
            assert all(a[1] <= b[0] for a, b in zip(mine, mine[1:]))


# --- degeneracy and colouring --------------------------------------------------------------------

def test_degeneracy_examples():
    path4 = DerivedGraph.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    assert degeneracy_order(path4)[1] == 1
    assert degeneracy_order(cycle(5))[1] == 2
    assert degeneracy_order(derive_graph(gen_kn_minus_matching(6)))[1] == 4


def test_degeneracy_tie_break_by_id():
    order, _ = degeneracy_order(DerivedGraph.from_edges("cab", []))
    assert order == ["a", "b", "c"]


def test_kmm_coloring():
    g = derive_graph(gen_kn_minus_matching(6))
    res = greedy_color(g)
    assert res.is_proper(g) and res.colors_used <= 5 and res.colors_used <= 2 * 3 * 3


def test_edgeless_one_colour():
    res = greedy_color(DerivedGraph.from_edges("abcd", []))
    assert res.colors_used == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 30))
def test_interval_graphs_within_twice_omega(seed, n):
    rep = random_bk(seed, 0, n)
    g = derive_graph(rep)
    res = greedy_color(g)
    omega = max_clique_exact(g).size
    assert res.is_proper(g)
    assert res.colors_used <= res.degeneracy + 1
    assert res.colors_used <= 2 * omega


# --- edge bound ---------------------------------------------------------------------------------------

def test_edge_bound_kmm():
    r = edge_bound_check(gen_kn_minus_matching(6))
    assert (r.edges, r.omega, r.bound, r.passed) == (12, 3, 36, True)


def test_edge_bound_single_edge():
    rep = EpgRepresentation.from_corners({"a": [(0, 0), (0, 2)], "b": [(0, 1), (0, 3)]}, k=0)
    r = edge_bound_check(rep)
    assert (r.edges, r.bound, r.passed) == (1, 2, True)


# --- clique or stable set ---------------------------------------------------------------------------------

def test_edgeless_gives_stable_set():
    kind, members = clique_or_stable_set(DerivedGraph.from_edges("abcdefgh", []), 1)
    assert kind == "stable" and len(members) == 8


def test_complete_graph_gives_clique():
    g = DerivedGraph.from_edges("abcdefghi", itertools.combinations("abcdefghi", 2))
    kind, members = clique_or_stable_set(g, 0)
    assert kind == "clique" and len(members) == 9


def test_ramsey_bound_is_exact():
    assert meets_ramsey_bound(2, 8, 0)  # 2 >= sqrt(4)
    assert not meets_ramsey_bound(2, 9, 0)
    assert meets_ramsey_bound(0, 0, 3)


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        clique_or_stable_set(cycle(4), -1)
