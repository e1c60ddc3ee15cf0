import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epgclique.grid import (DerivedGraph, EpgRepresentation, GridPath, GridPoint, PathError, classify_vertex,
                            derive_graph, grid_edges, normalize_two_bends, parse_representation,
                            serialize_representation, transpose_representation, vertex_kinds)
from epgclique.testkit import GenConfig, gen_kn_minus_matching, gen_random_bk

from _support import random_bk


def rep_of(**paths):
    return EpgRepresentation.from_corners(paths)


# --- paths -------------------------------------------------------------------

def test_grid_edges_straight_segment():
    p = GridPath("p", ((0, 0), (0, 3)))
    assert grid_edges(p) == {((0, 0), (0, 1)), ((0, 1), (0, 2)), ((0, 2), (0, 3))}


def test_grid_edges_z_path_counts_all_segments():
    p = GridPath("p", ((2, 1), (2, 4), (5, 4), (5, 7)))
    assert len(grid_edges(p)) == 9
    assert p.length == 9


def test_single_corner_rejected():
    with pytest.raises(PathError):
        GridPath("p", ((0, 0),))


@pytest.mark.parametrize("corners, reason", [
    (((0, 0), (1, 1)), "non-axis-aligned"),
    (((0, 0), (0, 2), (0, 4)), "collinear"),
    (((0, 0), (0, 2), (0, 2), (1, 2)), "repeated"),
    (((0, 0), (0, 3), (1, 3), (1, 1), (0, 1), (0, 2)), "edge"),
])
def test_invalid_paths(corners, reason):
    with pytest.raises(PathError) as exc:
        GridPath("bad", corners)
    assert reason in str(exc.value)


def test_negative_coordinates_rejected():
    with pytest.raises(ValueError):
        GridPoint(-1, 0)


def test_bends():
    assert GridPath("p", ((0, 0), (0, 3))).bends == 0
    assert GridPath("p", ((2, 1), (2, 4), (5, 4), (5, 7))).bends == 2


# --- derived graph ---------------------------------------------------------------

def test_shared_edge_means_adjacent():
    g = derive_graph(rep_of(p1=[(0, 0), (0, 3)], p2=[(0, 2), (0, 5)]))
    assert g.has_edge("p1", "p2")


def test_touching_at_a_point_is_not_adjacent():
    g = derive_graph(rep_of(p1=[(0, 0), (0, 2)], p2=[(0, 2), (0, 4)]))
    assert not g.has_edge("p1", "p2")


def test_crossing_paths_are_not_adjacent():
    g = derive_graph(rep_of(h=[(2, 0), (2, 4)], v=[(0, 2), (4, 2)]))
    assert g.edge_count() == 0


def test_kn_minus_matching_graph():
    g = derive_graph(gen_kn_minus_matching(6))
    expected = {(f"{x}{i}", f"{y}{j}") for x in "ab" for y in "ab" for i in range(3) for j in range(3)
                if (x, i) < (y, j) and not (i == j and x != y)}
    assert set(g.edges()) == {tuple(sorted(e)) for e in expected}


def test_derived_graph_rejects_asymmetry():
    with pytest.raises(ValueError):
        DerivedGraph(("a", "b"), {"a": frozenset({"b"}), "b": frozenset()})


def test_derived_graph_rejects_self_loop():
    with pytest.raises(ValueError):
        DerivedGraph.from_edges(["a"], [("a", "a")])


# --- classification and transpose ------------------------------------------------------

def test_classify_z():
    c = classify_vertex(GridPath("z", ((2, 1), (2, 4), (5, 4), (5, 7))))
    assert (c.kind, c.index, c.columns) == ("Z", frozenset({2, 5}), frozenset({4}))


def test_classify_u():
    c = classify_vertex(GridPath("u", ((5, 1), (2, 1), (2, 6), (5, 6))))
    assert (c.kind, c.index, c.columns) == ("U", frozenset({2}), frozenset({1, 6}))


def test_classify_needs_two_bends():
    with pytest.raises(ValueError):
        classify_vertex(GridPath("p", ((0, 0), (0, 3))))


def test_transpose_swaps_kind_and_is_involution():
    rep = rep_of(z=[(2, 1), (2, 4), (5, 4), (5, 7)])
    t = transpose_representation(rep)
    assert classify_vertex(t.path("z")).kind == "U"
    assert transpose_representation(t) == rep


# --- normalization ---------------------------------------------------------------

def test_normalize_keeps_two_bend_input():
    rep = rep_of(z=[(2, 1), (2, 4), (5, 4), (5, 7)], u=[(5, 1), (2, 1), (2, 6), (5, 6)])
    assert normalize_two_bends(rep) == rep


def test_normalize_straight_path_becomes_u_shape():
    rep = rep_of(h=[(3, 2), (3, 5)], other=[(3, 4), (3, 8)], z=[(1, 2), (1, 3), (3, 3), (3, 6)])
    out = normalize_two_bends(rep)
    p = out.path("h")
    assert p.bends == 2
    (r0, b), (r1, b2), (r2, g), (r3, g2) = [c.as_tuple() for c in p.corners]
    assert r0 == r3 == r1 + 1 and r1 == r2 and b == b2 and g == g2
    assert derive_graph(out) == derive_graph(rep)


def test_normalize_l_path_gets_one_stub():
    rep = rep_of(l=[(1, 1), (1, 4), (4, 4)], h=[(1, 0), (1, 2)], v=[(3, 4), (6, 4)])
    out = normalize_two_bends(rep)
    assert out.path("l").bends == 2
    assert len(out.path("l").corners) == 4
    assert derive_graph(out) == derive_graph(rep)


def test_normalize_rejects_three_bends():
    rep = EpgRepresentation.from_corners({"p": [(0, 0), (0, 2), (2, 2), (2, 4), (4, 4)]}, k=3)
    with pytest.raises(ValueError):
        normalize_two_bends(rep)


# --- file format -----------------------------------------------------------------------

def test_serialize_is_bit_exact():
    rep = rep_of(v1=[(2, 1), (2, 4), (5, 4), (5, 7)])
    assert serialize_representation(rep) == '{"k":2,"paths":[{"id":"v1","corners":[[2,1],[2,4],[5,4],[5,7]]}]}'


def test_round_trip():
    rep = gen_random_bk(GenConfig(n=12, k=3, seed=5))
    assert parse_representation(serialize_representation(rep)) == rep


def test_parse_names_vertex_and_corner():
    text = json.dumps({"k": 2, "paths": [{"id": "ok", "corners": [[0, 0], [0, 1]]},
                                         {"id": "bad", "corners": [[0, 0], [1, 1]]}]})
    with pytest.raises(PathError) as exc:
        parse_representation(text)
    assert exc.value.vertex_id == "bad" and exc.value.corner_index == 1
    assert "non-axis-aligned" in str(exc.value)


def test_parse_duplicate_id():
    text = json.dumps({"k": 2, "paths": [{"id": "a", "corners": [[0, 0], [0, 1]]},
                                         {"id": "a", "corners": [[1, 0], [1, 1]]}]})
    with pytest.raises(ValueError, match="duplicate"):
        parse_representation(text)


def test_parse_bend_budget():
    text = json.dumps({"k": 0, "paths": [{"id": "a", "corners": [[0, 0], [0, 1], [1, 1]]}]})
    with pytest.raises(PathError, match="budget"):
        parse_representation(text)


def test_parse_garbage():
    with pytest.raises(ValueError):
        parse_representation("not json")


# --- properties ------------------------------------------------------------------------------

seeds = st.integers(min_value=0, max_value=10**6)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 4))
def test_derived_graph_invariances(seed, k):
    rep = random_bk(seed, k, 10)
    g = derive_graph(rep)
    for u, v in g.edges():
        assert g.has_edge(v, u) and u != v
    assert derive_graph(transpose_representation(rep)) == g
    shifted = EpgRepresentation.from_corners(
        {p.vertex_id: [(c.row + 3, c.col + 7) for c in p.corners] for p in rep.paths}, k)
    assert derive_graph(shifted) == g


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 2))
def test_normalization_preserves_graph_and_classifies(seed, k):
    rep = random_bk(seed, k, 10, grid=8)
    out = normalize_two_bends(rep)
    assert derive_graph(out) == derive_graph(rep)
    assert all(p.bends == 2 for p in out.paths)
    assert set(vertex_kinds(out).values()) <= {"Z", "U"}


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 4))
def test_edge_count_is_length(seed, k):
    for p in random_bk(seed, k, 6).paths:
        assert len(grid_edges(p)) == sum(abs(a.row - b.row) + abs(a.col - b.col) for a, b in p.segments())
