"""Maximum clique of an arbitrary B2 representation.

A clique mixes U-vertices and Z-vertices.  After possibly rotating the grid,
its U-vertices lie on at most three rows.  On each such row the U-vertices
of the clique all contain a small *candidate set* S: one horizontal typed
interval plus at most two vertical ones hanging off its endpoints.  The
subgraph made of the U-vertices containing some S_i and the Z-vertices
intersecting every S_i is a join of a U-only part and a Z-only part, so its
maximum clique is the sum of two Z-only solves.

Candidate sets are summarised by the pair of bitmasks (U-vertices containing
all of S, Z-vertices intersecting some of S).  Values are monotone in both
masks, so dominated pairs are never evaluated.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .cliques import CliqueResult, _color_bound, bits, popcount
from .grid import (DerivedGraph, EpgRepresentation, classify_vertex, derive_graph, normalize_two_bends,
                   transpose_representation)
from .typed import TypedInterval, _contains, _intersects, _proper, as_tuple, projection_tuple
from .zclique import TYPES, _compress, _pareto, _row_columns, important_points, z_clique_masks


class BudgetExceeded(RuntimeError):
    """The sweep ran past its time budget."""


@dataclass(frozen=True)
class CandidateSet:
    """One horizontal typed interval and up to two vertical ones.

    Vertical intervals live in the transposed representation: their ``row``
    is a column of the grid and their endpoints are grid rows.  Each one has
    an endpoint on the horizontal row and sits on a column through an
    endpoint of the horizontal interval.
    """

    horizontal: TypedInterval
    verticals: tuple[TypedInterval, ...] = ()

    def __post_init__(self):
        h = self.horizontal
        if len(self.verticals) > 2:
            raise ValueError("a candidate set has at most two vertical typed intervals")
        if len({v.row for v in self.verticals}) != len(self.verticals):
            raise ValueError("vertical typed intervals must lie on distinct columns")
        for v in self.verticals:
            if v.row not in (h.lo, h.hi):
                raise ValueError(f"vertical {v} is not on a column through an endpoint of {h}")
            if h.row not in (v.lo, v.hi):
                raise ValueError(f"vertical {v} does not share an endpoint with {h}")

    def __str__(self):
        vs = ", ".join(f"col:{v.row} [{v.left.type}@{v.lo}, {v.right.type}@{v.hi}]" for v in self.verticals)
        return f"{{{self.horizontal}" + (f"; {vs}" if vs else "") + "}"


def _ti(row, t) -> TypedInterval:
    a, x, b, y = t
    return TypedInterval.make(row, x, a, y, b)


def _check_b2(rep: EpgRepresentation):
    for p in rep.paths:
        if p.bends > 2:
            raise ValueError(f"vertex {p.vertex_id!r} has {p.bends} bends; at most 2 are allowed")


def _require_two_bends(rep: EpgRepresentation):
    for p in rep.paths:
        if p.bends != 2:
            raise ValueError(f"vertex {p.vertex_id!r} has {p.bends} bends; normalize the representation first")


class _Side:
    """Candidate-set signatures for one orientation of a normalized representation."""

    def __init__(self, rep: EpgRepresentation, pos: dict[str, int], transposed: bool = False):
        self.rep = rep
        self.trep = transpose_representation(rep)
        self.transposed = transposed
        self.u_mask = self.z_mask = 0
        self.u_rows: dict[int, int] = {}
        for p in rep.paths:
            b = 1 << pos[p.vertex_id]
            if classify_vertex(p).kind == "U":
                self.u_mask |= b
                (row,) = p.rows()
                self.u_rows[row] = self.u_rows.get(row, 0) | b
            else:
                self.z_mask |= b
        self.points = important_points(rep)
        self.tpoints = important_points(self.trep)
        self.hproj = self._projections(rep, pos)
        self.vproj = self._projections(self.trep, pos)
        self._vopts: dict[tuple[int, int], list] = {}

    @staticmethod
    def _projections(rep, pos) -> dict[int, list]:
        out: dict[int, list] = {}
        for p in rep.paths:
            for r in p.rows():
                out.setdefault(r, []).append((1 << pos[p.vertex_id], projection_tuple(p, r)))
        return out

    def _sig(self, projs, t) -> tuple[int, int]:
        uc = zi = 0
        for b, proj in projs:
            if b & self.u_mask:
                if _contains(proj, t):
                    uc |= b
            elif _intersects(proj, t):
                zi |= b
        return uc, zi

    def _line_cols(self, points, projs, line, extra=()) -> list[int]:
        crit = sorted({t[0] for _, t in projs} | {t[2] for _, t in projs} | set(extra))
        return _compress(_row_columns(points, line), crit)

    def horizontals(self, a: int, compress: bool = True):
        """``(t, uc, zi)`` for typed intervals on row ``a`` contained in some U-vertex."""
        projs = self.hproj.get(a, [])
        cols = self._line_cols(self.points, projs, a) if compress else _row_columns(self.points, a)
        for i, lo in enumerate(cols):
            for hi in cols[i:]:
                for x, y in product(TYPES, TYPES):
                    t = (lo, x, hi, y)
                    if not _proper(*t):
                        continue
                    uc, zi = self._sig(projs, t)
                    if uc:
                        yield t, uc, zi

    def verticals(self, a: int, c: int, compress: bool = True):
        """``(t, uc, zi)`` for vertical typed intervals on column ``c`` with an
        endpoint on row ``a`` and contained in some U-vertex."""
        projs = self.vproj.get(c, [])
        cols = self._line_cols(self.tpoints, projs, c, (a,)) if compress else _row_columns(self.tpoints, c)
        if a not in cols:
            return
        for other in cols:
            lo, hi = min(a, other), max(a, other)
            for x, y in product(TYPES, TYPES):
                t = (lo, x, hi, y)
                if not _proper(*t):
                    continue
                uc, zi = self._sig(projs, t)
                if uc:
                    yield t, uc, zi

    def vertical_options(self, a: int, c: int) -> list[tuple[int, int, tuple]]:
        key = (a, c)
        if key not in self._vopts:
            table = {}
            for t, uc, zi in self.verticals(a, c):
                table.setdefault((uc, zi), t)
            self._vopts[key] = [(uc, zi, table[(uc, zi)]) for uc, zi in _pareto(table)]
        return self._vopts[key]

    def row_signatures(self, a: int, deadline=None) -> dict[tuple[int, int], CandidateSet]:
        """Non-dominated ``(U-contain, Z-intersect)`` signatures on row ``a``."""
        by_ends: dict[tuple[int, int], dict] = {}
        for t, uc, zi in self.horizontals(a):
            by_ends.setdefault((t[0], t[2]), {}).setdefault((uc, zi), t)
        table: dict[tuple[int, int], tuple] = {}
        for (lo, hi), sigs in by_ends.items():
            _tick(deadline)
            v1 = [None] + self.vertical_options(a, lo)
            v2 = [None] + (self.vertical_options(a, hi) if hi != lo else [])
            for uc_h, zi_h in _pareto(sigs):
                t = sigs[(uc_h, zi_h)]
                for o1, o2 in product(v1, v2):
                    uc, zi, vs = uc_h, zi_h, []
                    for col, o in ((lo, o1), (hi, o2)):
                        if o is not None:
                            uc &= o[0]
                            zi |= o[1]
                            vs.append((col, o[2]))
                    if uc and (uc, zi) not in table:
                        table[(uc, zi)] = (t, tuple(vs))
        out = {}
        for sig in _pareto(table):
            t, vs = table[sig]
            out[sig] = CandidateSet(_ti(a, t), tuple(_ti(col, v) for col, v in vs))
        return out


def _tick(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("clique sweep exceeded its time budget")


def candidate_S_sets(rep: EpgRepresentation) -> list[CandidateSet]:
    """Every candidate set of a normalized representation.

    Horizontal intervals range over typed intervals with endpoints at
    important points of a row, contained in at least one U-vertex of that
    row.  Verticals sit on the columns through the horizontal endpoints,
    share the endpoint on the row, and have their other endpoint at an
    important point of the column.  Sets contained in no U-vertex select no
    U-vertex and are left out.
    """
    _require_two_bends(rep)
    pos = {v: i for i, v in enumerate(sorted(rep.ids))}
    side = _Side(rep, pos)
    out = []
    for a in sorted(side.u_rows):
        for t, uc_h, _ in side.horizontals(a, compress=False):
            lo, hi = t[0], t[2]
            v1 = [None] + [(v, uc) for v, uc, _ in side.verticals(a, lo, compress=False) if uc & uc_h]
            v2 = [None] + ([(v, uc) for v, uc, _ in side.verticals(a, hi, compress=False) if uc & uc_h]
                           if hi != lo else [])
            for o1, o2 in product(v1, v2):
                uc = uc_h
                vs = []
                for col, o in ((lo, o1), (hi, o2)):
                    if o is not None:
                        uc &= o[1]
                        vs.append(_ti(col, o[0]))
                if uc:
                    out.append(CandidateSet(_ti(a, t), tuple(vs)))
    return out


def _set_contains(rep, trep, vid, s: CandidateSet) -> bool:
    proj = projection_tuple(rep.path(vid), s.horizontal.row)
    if proj is None or not _contains(proj, as_tuple(s.horizontal)):
        return False
    for v in s.verticals:
        proj = projection_tuple(trep.path(vid), v.row)
        if proj is None or not _contains(proj, as_tuple(v)):
            return False
    return True


def _set_intersects(rep, trep, vid, s: CandidateSet) -> bool:
    proj = projection_tuple(rep.path(vid), s.horizontal.row)
    if proj is not None and _intersects(proj, as_tuple(s.horizontal)):
        return True
    for v in s.verticals:
        proj = projection_tuple(trep.path(vid), v.row)
        if proj is not None and _intersects(proj, as_tuple(v)):
            return True
    return False


def subgraph_of_S(rep: EpgRepresentation, sets: Iterable[CandidateSet]) -> tuple[frozenset, frozenset]:
    """U-vertices containing every interval of some set, and Z-vertices
    intersecting at least one interval of every set."""
    sets = list(sets)
    if len(sets) > 3:
        raise ValueError("at most three candidate sets")
    _require_two_bends(rep)
    trep = transpose_representation(rep)
    kinds = {p.vertex_id: classify_vertex(p).kind for p in rep.paths}
    u_part = frozenset(v for v in rep.ids if kinds[v] == "U"
                       and any(_set_contains(rep, trep, v, s) for s in sets))
    z_part = frozenset(v for v in rep.ids if kinds[v] == "Z"
                       and all(_set_intersects(rep, trep, v, s) for s in sets))
    return u_part, z_part


def _maximal_pairs(pairs) -> list[tuple[int, int]]:
    """Pairs not dominated (componentwise bit inclusion) by another pair."""
    ordered = sorted(set(pairs), key=lambda p: -(popcount(p[0]) + popcount(p[1])))
    keep: list[tuple[int, int]] = []
    for u, z in ordered:
        if not any(u & ~ku == 0 and z & ~kz == 0 for ku, kz in keep):
            keep.append((u, z))
    return keep


def _side_pairs(side: _Side, deadline) -> tuple[list[tuple[int, int]], dict]:
    """All ``(U_part, Z_part)`` masks reachable with 0..3 sets on distinct rows."""
    rows = sorted(side.u_rows)
    lists = []
    origin: dict[tuple[int, int], tuple] = {(0, side.z_mask): ()}
    for a in rows:
        sigs = side.row_signatures(a, deadline)
        lists.append(list(sigs.items()))
    found = {(0, side.z_mask)}
    frontier = {(-1, 0, side.z_mask)}
    for _ in range(3):
        nxt = set()
        for last, u, z in frontier:
            _tick(deadline)
            for j in range(last + 1, len(rows)):
                for (uc, zi), cs in lists[j]:
                    state = (j, u | uc, z & zi)
                    if state not in nxt:
                        nxt.add(state)
                        pair = state[1:]
                        if pair not in origin:
                            origin[pair] = origin[(u, z)] + (cs,)
                        found.add(pair)
        frontier = nxt
    return _maximal_pairs(found), origin


class _ZSolver:
    """Memoised Z-only solves keyed by vertex mask (the value only depends
    on the induced subgraph)."""

    def __init__(self, rep, adj, pos):
        self.rep, self.adj, self.pos = rep, adj, pos
        self.ids = sorted(pos, key=pos.get)
        self.size: dict[int, int] = {}
        self.lex: dict[int, int] = {}
        self.ub: dict[int, int] = {}

    def upper(self, mask: int) -> int:
        if mask not in self.ub:
            self.ub[mask] = min(popcount(mask), _color_bound(self.adj, mask)) if mask else 0
        return self.ub[mask]

    def _rep_for(self, mask: int, transpose: bool) -> EpgRepresentation:
        sub = self.rep.restrict(self.ids[i] for i in bits(mask))
        return transpose_representation(sub) if transpose else sub

    def solve(self, mask: int, transpose: bool) -> int:
        if mask not in self.lex:
            if not mask:
                self.lex[mask] = 0
            else:
                m, _ = z_clique_masks(self._rep_for(mask, transpose), self.adj, self.pos)
                self.lex[mask] = m
            self.size[mask] = popcount(self.lex[mask])
        return self.size[mask]


def max_clique_b2(rep: EpgRepresentation, graph: DerivedGraph | None = None,
                  budget: float | None = None) -> CliqueResult:
    """Maximum clique of a B2 representation (paths with at most two bends).

    ``budget`` is a wall-clock limit in seconds; :class:`BudgetExceeded` is
    raised when it runs out.  Among maximum cliques the one with the
    lexicographically smallest sorted id tuple is returned.
    """
    _check_b2(rep)
    deadline = None if budget is None else time.monotonic() + budget
    graph = graph or derive_graph(rep)
    if set(graph.vertices) != set(rep.ids):
        raise ValueError("graph and representation disagree on the vertex set")
    if not rep.paths:
        return CliqueResult(())
    norm = normalize_two_bends(rep)
    order, adj = graph.bitsets()
    pos = {v: i for i, v in enumerate(order)}
    best, best_key, best_mask, best_w = -1, None, 0, None
    for transposed in (False, True):
        work = transpose_representation(norm) if transposed else norm
        side = _Side(work, pos, transposed)
        solver = _ZSolver(work, adj, pos)
        pairs, origin = _side_pairs(side, deadline)
        pairs.sort(key=lambda p: -(solver.upper(p[0]) + solver.upper(p[1])))
        for u, z in pairs:
            _tick(deadline)
            if solver.upper(u) + solver.upper(z) < best:
                continue
            for b in bits(u):
                if adj[b] & z != z:
                    raise AssertionError("candidate subgraph is not a join of its U and Z parts")
            size = solver.solve(u, True) + solver.solve(z, False)
            if size < best:
                continue
            mask = solver.lex[u] | solver.lex[z]
            key = tuple(bits(mask))
            if size > best or key < best_key:
                best, best_key, best_mask = size, key, mask
                best_w = (transposed, origin.get((u, z)))
    members = tuple(order[i] for i in bits(best_mask))
    if not graph.is_clique(members):
        raise AssertionError("B2 sweep produced a non-clique")
    return CliqueResult(members, witness=best_w)


__all__ = ["CandidateSet", "BudgetExceeded", "candidate_S_sets", "subgraph_of_S", "max_clique_b2"]
