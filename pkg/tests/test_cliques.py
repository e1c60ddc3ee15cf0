import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epgclique.cliques import (CliqueResult, enumerate_maximal_cliques, max_clique_cobipartite,
                               max_clique_exact)
from epgclique.grid import DerivedGraph, derive_graph
from epgclique.testkit import gen_kn_minus_matching


def graph(n, edges):
    return DerivedGraph.from_edges([str(i) for i in range(1, n + 1)], [(str(a), str(b)) for a, b in edges])


def brute_force_omega(g):
    vs = list(g.vertices)
    for size in range(len(vs), 0, -1):
        for c in itertools.combinations(vs, size):
            if g.is_clique(c):
                return size
    return 0


def kmm():
    return derive_graph(gen_kn_minus_matching(6))


def test_exact_on_kn_minus_matching():
    res = max_clique_exact(kmm())
    assert res.size == 3 and res.members == ("a0", "a1", "a2")


def test_exact_edgeless_and_empty():
    assert max_clique_exact(graph(5, [])).size == 1
    assert max_clique_exact(DerivedGraph.from_edges([], [])).size == 0


def test_exact_prefers_lexicographically_smallest():
    g = graph(6, [(4, 5), (5, 6), (4, 6), (1, 2), (2, 3), (1, 3)])
    assert max_clique_exact(g).members == ("1", "2", "3")


def test_maximal_cliques_of_kn_minus_matching():
    cliques = enumerate_maximal_cliques(kmm())
    assert len(cliques) == 8 and all(len(c) == 3 for c in cliques)


def test_maximal_cliques_small_graphs():
    tri = DerivedGraph.from_edges("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert enumerate_maximal_cliques(tri) == [("a", "b", "c")]
    p3 = DerivedGraph.from_edges("abc", [("a", "b"), ("b", "c")])
    assert enumerate_maximal_cliques(p3) == [("a", "b"), ("b", "c")]


def cobipartite(n1, n2, non_edges):
    left = [f"l{i}" for i in range(n1)]
    right = [f"r{i}" for i in range(n2)]
    edges = list(itertools.combinations(left, 2)) + list(itertools.combinations(right, 2))
    edges += [(a, b) for a in left for b in right if (a, b) not in non_edges]
    return DerivedGraph.from_edges(left + right, edges), left, right


def test_cobipartite_matching_example():
    g = graph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]
              + [(a, b) for a in (1, 2, 3) for b in (4, 5, 6) if (a, b) not in {(1, 4), (2, 5), (3, 6)}])
    res = max_clique_cobipartite(g, ["1", "2", "3"], ["4", "5", "6"])
    assert res.size == 3 and g.is_clique(res.members)


def test_cobipartite_complete_and_co_c4():
    g, left, right = cobipartite(3, 4, set())
    assert max_clique_cobipartite(g, left, right).size == 7
    g, left, right = cobipartite(2, 2, {("l0", "r0"), ("l1", "r1")})
    assert max_clique_cobipartite(g, left, right).size == 2


def test_cobipartite_rejects_bad_parts():
    g, left, right = cobipartite(2, 2, set())
    with pytest.raises(ValueError):
        max_clique_cobipartite(g, left, right[:1])
    p3 = DerivedGraph.from_edges("abc", [("a", "b"), ("b", "c")])
    with pytest.raises(ValueError):
        max_clique_cobipartite(p3, ["a", "c"], ["b"])


def test_cobipartite_agrees_with_exact_on_random_graphs():
    rng = random.Random(7)
    for _ in range(500):
        n1, n2 = rng.randint(0, 20), rng.randint(0, 20)
        p = rng.random()
        non = {(f"l{i}", f"r{j}") for i in range(n1) for j in range(n2) if rng.random() < p}
        g, left, right = cobipartite(n1, n2, non)
        got = max_clique_cobipartite(g, left, right)
        assert g.is_clique(got.members)
        assert got == max_clique_exact(g)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 11), st.floats(0, 1), st.integers(0, 10**6))
def test_exact_and_enumeration_on_random_graphs(n, p, seed):
    rng = random.Random(seed)
    edges = [(a, b) for a, b in itertools.combinations(range(1, n + 1), 2) if rng.random() < p]
    g = graph(n, edges)
    res = max_clique_exact(g)
    assert g.is_clique(res.members) and res.size == brute_force_omega(g)
    cliques = enumerate_maximal_cliques(g)
    assert len(set(cliques)) == len(cliques)
    for c in cliques:
        assert g.is_clique(c)
        assert not any(all(g.has_edge(v, w) for w in c) for v in g.vertices if v not in c)
    assert max(len(c) for c in cliques) == res.size
    smallest = min(c for c in cliques if len(c) == res.size)
    assert res.members == smallest


def test_clique_result_sorts_members():
    assert CliqueResult(("b", "a")).members == ("a", "b")
