"""Shared helpers for the test suite."""

from __future__ import annotations

import bisect
import random

from epgclique.grid import EpgRepresentation, normalize_two_bends
from epgclique.testkit import GenConfig, gen_random_b2_mixed, gen_random_bk, gen_random_z_only
from epgclique.typed import _contains, _intersects, _proper, projection_tuple
from epgclique.zclique import TYPES, important_points


def random_normalized(seed: int, n: int = 8, grid: int = 8) -> EpgRepresentation:
    """A normalized B2 representation; alternates mixed and Z-only families."""
    cfg = GenConfig(n=n, k=2, rows=grid, cols=grid, seed=seed)
    gen = gen_random_z_only if seed % 3 == 0 else gen_random_b2_mixed
    return normalize_two_bends(gen(cfg))


def random_bk(seed: int, k: int, n: int, grid: int = 12) -> EpgRepresentation:
    return gen_random_bk(GenConfig(n=n, k=k, rows=grid, cols=grid, seed=seed))


def random_typed(rng: random.Random, lo: int, hi: int) -> tuple[int, str, int, str]:
    """A random proper typed interval (tuple form) with columns in [lo, hi]."""
    while True:
        a, b = sorted((rng.randint(lo, hi), rng.randint(lo, hi)))
        t = (a, rng.choice(TYPES), b, rng.choice(TYPES))
        if _proper(*t):
            return t


def behaviour(rep: EpgRepresentation, row: int, t) -> tuple[frozenset, frozenset]:
    """(vertices containing t, vertices intersecting t) on ``row``."""
    cont, inter = set(), set()
    for p in rep.paths:
        proj = projection_tuple(p, row)
        if proj is None:
            continue
        if _contains(proj, t):
            cont.add(p.vertex_id)
        if _intersects(proj, t):
            inter.add(p.vertex_id)
    return frozenset(cont), frozenset(inter)


def important_columns(rep: EpgRepresentation) -> dict[int, list[int]]:
    out: dict[int, set] = {}
    for pt in important_points(rep):
        out.setdefault(pt.row, set()).add(pt.col)
    return {r: sorted(cs) for r, cs in out.items()}


def _nearest(cols: list[int], x: int) -> list[int]:
    """Important columns nearest to ``x`` (one or two on a tie), lower first."""
    i = bisect.bisect_left(cols, x)
    near = [c for c in cols[max(0, i - 1):i + 1]]
    best = min(abs(c - x) for c in near)
    return [c for c in near if abs(c - x) == best]


def snap(cols: list[int], t, side: int):
    """Move endpoint ``side`` (0 left, 1 right) of ``t`` to a nearest important
    column, keeping the interval ordered and proper.  Returns None if no
    nearest column allows that."""
    lo, lt, hi, rt = t
    x = lo if side == 0 else hi
    i = bisect.bisect_left(cols, x)
    options = _nearest(cols, x) + [c for c in cols[max(0, i - 1):i + 1]]
    for c in options:
        cand = (c, lt, hi, rt) if side == 0 else (lo, lt, c, rt)
        if cand[0] <= cand[2] and _proper(*cand):
            return cand
    return None
