import csv
import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epgclique.cliques import enumerate_maximal_cliques, max_clique_exact
from epgclique.grid import derive_graph, parse_representation, serialize_representation, vertex_kinds
from epgclique.testkit import (GenConfig, GridTooSmallError, cross_validate, gen_c4_projection_instance,
                               gen_kn_minus_matching, gen_random_b2_mixed, gen_random_bk, gen_random_z_only)
from epgclique.typed import projection_graph


def test_seed_determinism():
    cfg = GenConfig(n=15, k=3, seed=42)
    assert gen_random_bk(cfg) == gen_random_bk(cfg)
    assert gen_random_bk(cfg) != gen_random_bk(GenConfig(n=15, k=3, seed=43))


def test_k_zero_paths_are_straight():
    rep = gen_random_bk(GenConfig(n=20, k=0, seed=1))
    assert all(p.bends == 0 for p in rep.paths)


def test_grid_too_small():
    with pytest.raises(GridTooSmallError):
        gen_random_bk(GenConfig(n=3, rows=1, cols=1))
    with pytest.raises(GridTooSmallError):
        gen_random_z_only(GenConfig(n=3, rows=1, cols=5))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 4), st.integers(0, 20))
def test_generators_round_trip(seed, k, n):
    for rep in (gen_random_bk(GenConfig(n=n, k=k, seed=seed)),
                gen_random_z_only(GenConfig(n=n, seed=seed)),
                gen_random_b2_mixed(GenConfig(n=n, seed=seed))):
        assert parse_representation(serialize_representation(rep)) == rep
        assert len(rep) == n


def test_z_only_generator_emits_z_vertices():
    rep = gen_random_z_only(GenConfig(n=20, seed=3))
    assert set(vertex_kinds(rep).values()) == {"Z"}


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10])
def test_kn_minus_matching_structure(m):
    rep = gen_kn_minus_matching(m)
    g = derive_graph(rep)
    assert g.edge_count() == m * (m - 1) // 2 - m // 2
    assert set(vertex_kinds(rep).values()) == {"U"}
    assert len(enumerate_maximal_cliques(g)) == 2 ** (m // 2)
    assert max_clique_exact(g).size == m // 2


def test_kn_minus_matching_small_cases():
    g = derive_graph(gen_kn_minus_matching(2))
    assert len(g) == 2 and g.edge_count() == 0
    with pytest.raises(ValueError):
        gen_kn_minus_matching(5)


def test_c4_fixture():
    rep = gen_c4_projection_instance()
    ids = ["v1", "v2", "v3", "v4"]
    c4 = {("v1", "v3"), ("v2", "v3"), ("v2", "v4"), ("v1", "v4")}
    assert set(vertex_kinds(rep).values()) == {"Z"}
    assert set(projection_graph(rep, ids, 10).edges()) == c4
    assert set(derive_graph(rep).edges()) == c4


def test_cross_validate_report(tmp_path):
    cfgs = [GenConfig(n=n, rows=6, cols=6, seed=s) for s, n in enumerate(range(1, 9))]
    report = cross_validate(cfgs, family="b2", fixtures_dir=tmp_path)
    assert report.ok and len(report.rows) == 8
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert rows[0].keys() >= {"instance", "structured", "oracle", "agree"}
    assert "8/8" in report.summary()
    assert not list(tmp_path.iterdir())


def test_cross_validate_dumps_mismatch(tmp_path, monkeypatch):
    import epgclique.testkit as tk
    from epgclique.cliques import CliqueResult

    def broken(rep, graph=None):
        return CliqueResult(())
    monkeypatch.setattr(tk, "_structured_for", lambda rep: broken)
    report = cross_validate([GenConfig(n=4, rows=5, cols=5, seed=9)], family="z", fixtures_dir=tmp_path)
    assert not report.ok
    (dump,) = tmp_path.iterdir()
    assert "seed9" in dump.name
    first, second = dump.read_text().splitlines()
    assert parse_representation(first) == gen_random_z_only(GenConfig(n=4, rows=5, cols=5, seed=9))
    assert '"oracle"' in second
