"""Maximum clique of a B2 representation whose paths are all Z-vertices.

The search ranges over *good graphs*.  A good graph is the set of vertices
selected by two typed intervals (kind I) or three (kind II) on distinct rows:

* kind I  ``(t_a, t_b)``: contains ``t_a``, or contains ``t_b``, or
  intersects both;
* kind II ``(t_a, t_b, t_c)``: contains ``t_a``, or contains ``t_b``, or
  intersects ``t_b`` and contains ``t_c``.

Each good graph splits into cliques joined in a way that makes its maximum
clique a bipartite matching problem (plus an exact solve of the vertices of
index ``{a, b}`` in kind I).  Typed interval endpoints only need to range over
*important points*, so the number of good graphs is polynomial.

Every maximal clique lies in a good graph of the representation or of its
transpose (cliques confined to two columns are caught after rotation), so
descriptors are enumerated in both orientations.

Note: the vertices of index ``{a, b}`` form a 2-track interval graph; that
piece is solved with the exact branch and bound of :mod:`.cliques` rather than
a dedicated polynomial 2-track routine.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .cliques import (CliqueResult, bits, clique_number, cobipartite_clique_mask, cobipartite_clique_size,
                      max_clique_mask, popcount)
from .grid import DerivedGraph, EpgRepresentation, classify_vertex, derive_graph, transpose_representation
from .typed import (TypedInterval, _contains, _intersects, _proper, as_tuple, contains, intersects,
                    projection_tuple)

TYPES = (".", "u", "d")


class NotZOnlyError(ValueError):
    pass


@dataclass(frozen=True)
class ImportantPoint:
    row: int
    col: int
    source: str  # "<vertex>:end|bend[+dir]" or "sentinel"


def important_points(rep: EpgRepresentation) -> list[ImportantPoint]:
    """Endpoints and bend points of every path, their four grid neighbours,
    and two sentinel columns (left and right of everything) on every row
    that carries a point plus one spare row above."""
    seen: dict[tuple[int, int], str] = {}
    for p in rep.paths:
        last = len(p.corners) - 1
        for i, c in enumerate(p.corners):
            what = "end" if i in (0, last) else "bend"
            tag = f"{p.vertex_id}:{what}"
            seen.setdefault((c.row, c.col), tag)
            for dr, dc, d in ((1, 0, "up"), (-1, 0, "down"), (0, -1, "left"), (0, 1, "right")):
                seen.setdefault((c.row + dr, c.col + dc), f"{tag}+{d}")
    lo = min((c for _, c in seen), default=0) - 1
    hi = max((c for _, c in seen), default=0) + 1
    spare = max((r for r, _ in seen), default=-1) + 1
    for r in sorted({r for r, _ in seen} | {spare}):
        seen.setdefault((r, lo), "sentinel")
        seen.setdefault((r, hi), "sentinel")
    return [ImportantPoint(r, c, s) for (r, c), s in sorted(seen.items())]


def _row_columns(points: list[ImportantPoint], row: int) -> list[int]:
    return sorted({p.col for p in points if p.row == row})


def _intervals_on(cols: list[int]) -> Iterator[tuple[int, str, int, str]]:
    for i, a in enumerate(cols):
        for b in cols[i:]:
            for x, y in product(TYPES, TYPES):
                if _proper(a, x, b, y):
                    yield (a, x, b, y)


def candidate_typed_intervals(rep: EpgRepresentation, row: int) -> list[TypedInterval]:
    """All proper typed intervals on ``row`` with both endpoints at important points."""
    cols = _row_columns(important_points(rep), row)
    return [TypedInterval.make(row, x, a, y, b) for a, x, b, y in _intervals_on(cols)]


def _compress(cols: list[int], critical: list[int]) -> list[int]:
    """Drop columns that no containment/intersection test can tell apart.

    Predicates only compare endpoint columns with projection extremities
    (``<``, ``=``, ``>``), so within one gap between extremities two columns
    (the outermost) suffice to realise every behaviour.
    """
    crit = set(critical)
    groups: dict[tuple[int, bool], list[int]] = {}
    for c in cols:
        groups.setdefault((bisect.bisect_left(critical, c), c in crit), []).append(c)
    keep = set()
    for g in groups.values():
        keep.add(g[0])
        keep.add(g[-1])
    return sorted(keep)


# --- descriptors ----------------------------------------------------------------

@dataclass(frozen=True)
class GoodGraphDescriptor:
    kind: str  # "I" or "II"
    intervals: tuple[TypedInterval, ...]
    transposed: bool = False

    def __post_init__(self):
        want = 2 if self.kind == "I" else 3 if self.kind == "II" else None
        if want is None:
            raise ValueError(f"unknown good-graph kind {self.kind!r}")
        if len(self.intervals) != want:
            raise ValueError(f"kind {self.kind} needs {want} typed intervals")
        if len({t.row for t in self.intervals}) != want:
            raise ValueError("typed intervals of a good graph must lie on distinct rows")
        if not all(_proper(*as_tuple(t)) for t in self.intervals):
            raise ValueError("typed intervals of a good graph must be proper")

    def __str__(self):
        tag = " (transposed)" if self.transposed else ""
        return f"kind {self.kind}{tag}: " + "; ".join(str(t) for t in self.intervals)


def _vertex_contains(rep: EpgRepresentation, vid: str, t: TypedInterval) -> bool:
    proj = projection_tuple(rep.path(vid), t.row)
    return proj is not None and _contains(proj, as_tuple(t))


def _vertex_intersects(rep: EpgRepresentation, vid: str, t: TypedInterval) -> bool:
    proj = projection_tuple(rep.path(vid), t.row)
    return proj is not None and _intersects(proj, as_tuple(t))


def good_graph_members(rep: EpgRepresentation, d: GoodGraphDescriptor) -> frozenset[str]:
    """Vertices selected by the descriptor.  A vertex only contains or
    intersects a typed interval on a row of its own index."""
    work = transpose_representation(rep) if d.transposed else rep
    out = set()
    for v in work.ids:
        if d.kind == "I":
            ta, tb = d.intervals
            ok = (_vertex_contains(work, v, ta) or _vertex_contains(work, v, tb)
                  or (_vertex_intersects(work, v, ta) and _vertex_intersects(work, v, tb)))
        else:
            ta, tb, tc = d.intervals
            ok = (_vertex_contains(work, v, ta) or _vertex_contains(work, v, tb)
                  or (_vertex_intersects(work, v, tb) and _vertex_contains(work, v, tc)))
        if ok:
            out.add(v)
    return frozenset(out)


def _split(rep: EpgRepresentation, d: GoodGraphDescriptor, members) -> tuple[set, set, set]:
    work = transpose_representation(rep) if d.transposed else rep
    ta, tb = d.intervals[0], d.intervals[1]
    h_a = {v for v in members if _vertex_contains(work, v, ta)}
    h_b = {v for v in members if v not in h_a and _vertex_contains(work, v, tb)}
    rest = set(members) - h_a - h_b
    if d.kind == "II":
        return h_a, h_b | rest, set()
    return h_a, h_b, rest


def max_clique_good_graph(rep: EpgRepresentation, d: GoodGraphDescriptor,
                          graph: DerivedGraph | None = None) -> CliqueResult:
    """Maximum clique of a good graph via its clique/join decomposition."""
    graph = graph or derive_graph(rep)
    members = good_graph_members(rep, d)
    h1, h2, h_ab = _split(rep, d, members)
    order, adj = graph.bitsets()
    pos = {v: i for i, v in enumerate(order)}
    m1 = sum(1 << pos[v] for v in h1)
    m2 = sum(1 << pos[v] for v in h2)
    m_ab = sum(1 << pos[v] for v in h_ab)
    _check_structure(adj, m1, m2, m_ab)
    chosen = cobipartite_clique_mask(adj, m1, m2) | _mask(max_clique_mask(adj, m_ab))
    return CliqueResult(tuple(order[i] for i in bits(chosen)), witness=d)


def _mask(idx) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


def _is_clique(adj, m) -> bool:
    return all((adj[v] | 1 << v) & m == m for v in bits(m))


def _check_structure(adj, m1, m2, m_ab):
    if not (_is_clique(adj, m1) and _is_clique(adj, m2)):
        raise AssertionError("good-graph parts are not cliques: membership bug")
    for v in bits(m_ab):
        if (adj[v] & (m1 | m2)) != (m1 | m2):
            raise AssertionError("2-track part is not complete to the clique parts: membership bug")


# --- the sweep --------------------------------------------------------------------

def _pareto(sigs):
    """Drop signatures dominated componentwise by another (bitmask inclusion)."""
    sigs = sorted(set(sigs), key=lambda s: -sum(popcount(x) for x in s))
    keep = []
    for s in sigs:
        if not any(all(x & ~y == 0 for x, y in zip(s, k)) for k in keep):
            keep.append(s)
    return keep


class _Orientation:
    """Per-row signatures ``(contains-mask, intersects-mask)`` of all
    candidate typed intervals, for one orientation of the representation."""

    def __init__(self, rep: EpgRepresentation, pos: dict[str, int], transposed: bool):
        self.rep = rep
        self.transposed = transposed
        points = important_points(rep)
        self.members: dict[int, list[tuple[int, tuple]]] = {}
        self.pair_mask: dict[tuple[int, int], int] = {}
        for p in rep.paths:
            b = pos[p.vertex_id]
            rows = sorted(p.rows())
            for r in rows:
                self.members.setdefault(r, []).append((b, projection_tuple(p, r)))
            if len(rows) == 2:
                for key in ((rows[0], rows[1]), (rows[1], rows[0])):
                    self.pair_mask[key] = self.pair_mask.get(key, 0) | 1 << b
        self.rows = sorted(self.members)
        self.sentinel_row = max((pt.row for pt in points), default=0) + 1
        lo = min((pt.col for pt in points), default=0)
        hi = max((pt.col for pt in points), default=0)
        self.sentinel = TypedInterval.make(self.sentinel_row, ".", lo, ".", hi)
        self.sigs: dict[int, dict[tuple[int, int], tuple]] = {}
        for r in self.rows:
            projs = self.members[r]
            critical = sorted({t[0] for _, t in projs} | {t[2] for _, t in projs})
            cols = _compress(_row_columns(points, r), critical)
            table: dict[tuple[int, int], tuple] = {}
            for t in _intervals_on(cols):
                c = i = 0
                for b, proj in projs:
                    if _intersects(proj, t):
                        i |= 1 << b
                        if _contains(proj, t):
                            c |= 1 << b
                if (c or i) and (c, i) not in table:
                    table[(c, i)] = t
            self.sigs[r] = table
        self.pareto = {r: _pareto(self.sigs[r]) for r in self.rows}
        self.cmax = {r: _pareto({(c,) for c, _ in self.sigs[r]}) for r in self.rows}

    def interval(self, row: int, sig) -> TypedInterval:
        if row == self.sentinel_row:
            return self.sentinel
        table = self.sigs[row]
        if len(sig) == 1:
            sig = next(s for s in table if s[0] == sig[0])
        a, x, b, y = table[sig]
        return TypedInterval.make(row, x, a, y, b)

    def descriptor(self, kind, slots) -> GoodGraphDescriptor:
        return GoodGraphDescriptor(kind, tuple(self.interval(r, s) for r, s in slots), self.transposed)

    def candidates(self) -> Iterator[tuple[str, tuple, int, int, int, int]]:
        """Yield ``(kind, slots, members, part1, part2, two_track)`` for every
        non-dominated descriptor; slots are ``(row, signature)`` pairs."""
        S = self.sentinel_row
        rows = self.rows
        # kind I
        for i, a in enumerate(rows):
            for b in rows[i + 1:]:
                paired = (a, b) in self.pair_mask
                la = self.pareto[a] if paired else self.cmax[a]
                lb = self.pareto[b] if paired else self.cmax[b]
                for sa in la:
                    ca = sa[0]
                    for sb in lb:
                        cb = sb[0]
                        both = sa[1] & sb[1] if paired else 0
                        members = ca | cb | both
                        yield "I", ((a, sa), (b, sb)), members, ca, cb & ~ca, members & ~(ca | cb)
        if len(rows) == 1:
            (a,) = rows
            for sa in self.cmax[a]:
                yield "I", ((a, sa), (S, (0,))), sa[0], sa[0], 0, 0
        # kind II: t_c only matters on vertices of index {b, c}
        for b in rows:
            for c in rows:
                pm = self.pair_mask.get((b, c))
                if c == b or pm is None:
                    continue
                origin = {}
                for s in self.cmax[c]:
                    origin.setdefault(s[0] & pm, s)
                tcs = [(m, origin[m]) for (m,) in _pareto({(m,) for m in origin}) if m]
                if not tcs:
                    continue
                for a in [S] + rows:
                    if a in (b, c):
                        continue
                    tas = [(0,)] if a == S else self.cmax[a]
                    for sb in self.pareto[b]:
                        for restricted, sc in tcs:
                            bc = sb[0] | (sb[1] & restricted)
                            for sa in tas:
                                ca = sa[0]
                                members = ca | bc
                                yield "II", ((a, sa), (b, sb), (c, sc)), members, ca, bc & ~ca, 0


def _orientations(rep: EpgRepresentation, pos) -> list[_Orientation]:
    return [_Orientation(rep, pos, False), _Orientation(transpose_representation(rep), pos, True)]


def enumerate_descriptors(rep: EpgRepresentation) -> list[GoodGraphDescriptor]:
    """The good-graph descriptors the sweep evaluates (dominated ones pruned)."""
    pos = {v: i for i, v in enumerate(sorted(rep.ids))}
    out = []
    seen = set()
    for o in _orientations(rep, pos):
        for kind, slots, *_ in o.candidates():
            key = (o.transposed, kind, slots)
            if key not in seen:
                seen.add(key)
                out.append(o.descriptor(kind, slots))
    return out


def _require_z_only(rep: EpgRepresentation):
    for p in rep.paths:
        if p.bends != 2 or classify_vertex(p).kind != "Z":
            raise NotZOnlyError(f"vertex {p.vertex_id!r} is not a Z-vertex")


def z_clique_masks(rep: EpgRepresentation, adj: list[int], pos: dict[str, int], lexmin: bool = True
                   ) -> tuple[int, object]:
    """Core of :func:`max_clique_z_only` on a caller-supplied bit numbering.

    Returns ``(clique mask, (orientation, kind, slots))``.
    """
    best = 0
    winners: dict[int, tuple] = {}
    memo: dict[int, int] = {}
    orients = _orientations(rep, pos)
    for o in orients:
        for kind, slots, members, p1, p2, p_ab in o.candidates():
            n_m = popcount(members)
            if n_m < best:
                continue
            size = memo.get(members)
            if size is None:
                size = cobipartite_clique_size(adj, p1, p2)
                if p_ab:
                    size += clique_number(adj, p_ab)
                memo[members] = size
            if size > best:
                best = size
                winners = {}
            if size == best and members not in winners:
                winners[members] = (o, kind, slots, p1, p2, p_ab)
    if not winners:
        return 0, None
    if not lexmin:
        members, (o, kind, slots, p1, p2, p_ab) = next(iter(winners.items()))
        return cobipartite_clique_mask(adj, p1, p2, lexmin=False) | _mask(max_clique_mask(adj, p_ab)), (o, kind, slots)
    best_mask, best_key, best_w = 0, None, None
    for members, (o, kind, slots, p1, p2, p_ab) in winners.items():
        m = cobipartite_clique_mask(adj, p1, p2) | _mask(max_clique_mask(adj, p_ab))
        key = tuple(bits(m))
        if best_key is None or key < best_key:
            best_mask, best_key, best_w = m, key, (o, kind, slots)
    return best_mask, best_w


def max_clique_z_only(rep: EpgRepresentation, graph: DerivedGraph | None = None) -> CliqueResult:
    """Maximum clique when every vertex is a Z-vertex (two rows, one column)."""
    _require_z_only(rep)
    graph = graph or derive_graph(rep)
    if set(graph.vertices) != set(rep.ids):
        raise ValueError("graph and representation disagree on the vertex set")
    order, adj = graph.bitsets()
    pos = {v: i for i, v in enumerate(order)}
    mask, w = z_clique_masks(rep, adj, pos)
    witness = w[0].descriptor(w[1], w[2]) if w else None
    members = tuple(order[i] for i in bits(mask))
    if not graph.is_clique(members):
        raise AssertionError("z-only sweep produced a non-clique")
    return CliqueResult(members, witness=witness)


__all__ = [
    "ImportantPoint", "GoodGraphDescriptor", "NotZOnlyError", "important_points", "candidate_typed_intervals",
    "good_graph_members", "max_clique_good_graph", "enumerate_descriptors", "max_clique_z_only",
    "z_clique_masks", "contains", "intersects",
]
