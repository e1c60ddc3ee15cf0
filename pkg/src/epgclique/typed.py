"""Typed intervals on a row: t-projections, coherence, containment, intersection.

A typed interval ``[x a, y b]`` is a closed column range ``[a, b]`` of one row
whose endpoints carry a bend type: ``.`` (empty, the path stops), ``u``
(bends towards larger rows) or ``d`` (towards smaller rows).

Vertical typed intervals are handled by applying the same functions to the
transposed representation.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .grid import DerivedGraph, EpgRepresentation, GridPath


class BendType(enum.Enum):
    EMPTY = "."
    UP = "u"
    DOWN = "d"

    def __str__(self):
        return self.value


EMPTY, UP, DOWN = BendType.EMPTY, BendType.UP, BendType.DOWN


class TypedIntervalError(ValueError):
    pass


@dataclass(frozen=True)
class TypedPoint:
    type: BendType
    col: int
    row: int

    def __str__(self):
        return f"{self.type.value}@{self.col}"


@dataclass(frozen=True)
class TypedInterval:
    row: int
    left: TypedPoint
    right: TypedPoint

    def __post_init__(self):
        if self.left.row != self.row or self.right.row != self.row:
            raise TypedIntervalError("typed points must lie on the interval's row")
        if self.left.col > self.right.col:
            raise TypedIntervalError(f"left column {self.left.col} > right column {self.right.col}")

    @classmethod
    def make(cls, row: int, ltype, lcol: int, rtype, rcol: int) -> TypedInterval:
        lt, rt = BendType(ltype), BendType(rtype)
        return cls(row, TypedPoint(lt, lcol, row), TypedPoint(rt, rcol, row))

    @property
    def lo(self) -> int:
        return self.left.col

    @property
    def hi(self) -> int:
        return self.right.col

    def key(self) -> tuple:
        return (self.row, self.left.col, self.left.type.value, self.right.col, self.right.type.value)

    def __str__(self):
        return f"row:{self.row} [{self.left}, {self.right}]"


_TI_RE = re.compile(r"^\s*row:(-?\d+)\s*\[\s*([.ud])@(-?\d+)\s*,\s*([.ud])@(-?\d+)\s*\]\s*$")


def parse_typed_interval(text: str) -> TypedInterval:
    """Inverse of ``str(TypedInterval)``, e.g. ``"row:2 [.@1, u@4]"``."""
    m = _TI_RE.match(text)
    if not m:
        raise TypedIntervalError(f"cannot parse typed interval {text!r}")
    row, lt, lc, rt, rc = m.groups()
    return TypedInterval.make(int(row), lt, int(lc), rt, int(rc))


def is_proper(t: TypedInterval) -> bool:
    if t.left.col != t.right.col:
        return True
    return t.left.type == t.right.type and t.left.type is not EMPTY


# --- predicates ---------------------------------------------------------------
# The public predicates take dataclasses; the underscored versions work on
# plain tuples (lo, ltype, hi, rtype) with ltype/rtype in {".", "u", "d"} and
# are what the clique sweeps call in their inner loops.

def _coh(lo, lt, hi, rt, gamma, z, edge_lo):
    """Tuple form of coherence.  ``edge_lo`` is the left column of the host's
    edge adjacent to ``gamma`` or ``None`` when the host is a single point."""
    if lo < gamma < hi:
        return True
    if z == ".":
        return edge_lo is not None and lo <= edge_lo and edge_lo + 1 <= hi
    return (z == lt and gamma == lo) or (z == rt and gamma == hi)


def _intersects(a, b) -> bool:
    alo, alt, ahi, art = a
    blo, blt, bhi, brt = b
    if max(alo, blo) < min(ahi, bhi):
        return True
    b_deg = blo == bhi
    a_deg = alo == ahi
    return (_coh(alo, alt, ahi, art, blo, blt, None if b_deg else blo)
            or _coh(alo, alt, ahi, art, bhi, brt, None if b_deg else bhi - 1)
            or _coh(blo, blt, bhi, brt, alo, alt, None if a_deg else alo)
            or _coh(blo, blt, bhi, brt, ahi, art, None if a_deg else ahi - 1))


def _contains(a, b) -> bool:
    alo, alt, ahi, art = a
    blo, blt, bhi, brt = b
    if not (alo <= blo and bhi <= ahi):
        return False
    b_deg = blo == bhi
    return (_coh(alo, alt, ahi, art, blo, blt, None if b_deg else blo)
            and _coh(alo, alt, ahi, art, bhi, brt, None if b_deg else bhi - 1))


def _proper(lo, lt, hi, rt) -> bool:
    return lo != hi or (lt == rt and lt != ".")


def as_tuple(t: TypedInterval) -> tuple[int, str, int, str]:
    return (t.left.col, t.left.type.value, t.right.col, t.right.type.value)


def _same_row(*ts: TypedInterval):
    rows = {t.row for t in ts}
    if len(rows) != 1:
        raise TypedIntervalError(f"typed intervals lie on different rows {sorted(rows)}")


def coherent(t: TypedInterval, endpoint: TypedPoint, host: TypedInterval) -> bool:
    """Whether ``t`` is coherent with ``endpoint``, an endpoint of ``host``."""
    _same_row(t, host)
    if endpoint.row != t.row:
        raise TypedIntervalError("endpoint lies on a different row")
    if host.left.col == host.right.col:
        if endpoint not in (host.left, host.right):
            raise TypedIntervalError(f"{endpoint} is not an endpoint of {host}")
        edge_lo = None
    elif endpoint == host.left:
        edge_lo = host.left.col
    elif endpoint == host.right:
        edge_lo = host.right.col - 1
    else:
        raise TypedIntervalError(f"{endpoint} is not an endpoint of {host}")
    lo, lt, hi, rt = as_tuple(t)
    return _coh(lo, lt, hi, rt, endpoint.col, endpoint.type.value, edge_lo)


def contains(t: TypedInterval, t2: TypedInterval) -> bool:
    """``t`` contains ``t2``: column range inclusion (non-strict) plus coherence
    of ``t`` with both endpoints of ``t2``."""
    _same_row(t, t2)
    return _contains(as_tuple(t), as_tuple(t2))


def intersects(t: TypedInterval, t2: TypedInterval) -> bool:
    _same_row(t, t2)
    return _intersects(as_tuple(t), as_tuple(t2))


# --- projections --------------------------------------------------------------

@dataclass(frozen=True)
class Projection:
    vertex_id: str
    interval: TypedInterval

    @property
    def extremities(self) -> tuple[int, int]:
        return (self.interval.left.col, self.interval.right.col)


def _end_type(path: GridPath, idx: int, row: int) -> BendType:
    """Bend type of the path at corner ``idx`` seen from the horizontal
    segment on ``row`` that ends there."""
    pts = path.corners
    if idx == 0 or idx == len(pts) - 1:
        return EMPTY
    # one of the neighbouring segments is vertical; find where it goes
    for j in (idx - 1, idx + 1):
        if pts[j].col == pts[idx].col and pts[j].row != pts[idx].row:
            return UP if pts[j].row > row else DOWN
    raise AssertionError("corner without vertical neighbour")  # pragma: no cover


def projection_tuple(path: GridPath, row: int) -> tuple[int, str, int, str] | None:
    """Tuple form of the t-projection, or None when ``row`` is not in the index."""
    pts = path.corners
    found = None
    for i in range(len(pts) - 1):
        p, q = pts[i], pts[i + 1]
        if p.row == row and q.row == row:
            if found is not None:
                raise TypedIntervalError(
                    f"vertex {path.vertex_id!r} has two segments on row {row}; t-projections need <= 2 bends")
            if p.col < q.col:
                found = (p.col, _end_type(path, i, row).value, q.col, _end_type(path, i + 1, row).value)
            else:
                found = (q.col, _end_type(path, i + 1, row).value, p.col, _end_type(path, i, row).value)
    return found


def t_projection(rep: EpgRepresentation, vertex_id: str, row: int) -> Projection:
    path = rep.path(vertex_id)
    tup = projection_tuple(path, row)
    if tup is None:
        raise TypedIntervalError(f"row {row} is not in the index of vertex {vertex_id!r}")
    lo, lt, hi, rt = tup
    return Projection(vertex_id, TypedInterval.make(row, lt, lo, rt, hi))


def projection_graph(rep: EpgRepresentation, vertex_set: Iterable[str], row: int) -> DerivedGraph:
    """Graph on ``vertex_set`` where u ~ v iff their t-projections on ``row`` intersect."""
    vs = list(vertex_set)
    tups = [as_tuple(t_projection(rep, v, row).interval) for v in vs]
    edges = [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))
             if _intersects(tups[i], tups[j])]
    return DerivedGraph.from_edges(vs, edges)


def _unanimous(types: Sequence[str]) -> str:
    if types and all(t == "u" for t in types):
        return "u"
    if types and all(t == "d" for t in types):
        return "d"
    return "."


def clique_interval(rep: EpgRepresentation, Y: Iterable[str], row: int) -> TypedInterval:
    """A proper typed interval contained in the t-projection of every vertex of ``Y``.

    ``Y`` must be a clique of the projection graph on ``row``.
    """
    vs = list(Y)
    if not vs:
        raise TypedIntervalError("empty vertex set")
    pg = projection_graph(rep, vs, row)
    if not pg.is_clique(vs):
        raise TypedIntervalError(f"projection of {sorted(vs)} on row {row} is not a clique")
    tups = [as_tuple(t_projection(rep, v, row).interval) for v in vs]
    alpha = max(t[0] for t in tups)
    beta = min(t[2] for t in tups)
    x = _unanimous([t[1] for t in tups if t[0] == alpha])
    y = _unanimous([t[3] for t in tups if t[2] == beta])
    return TypedInterval.make(row, x, alpha, y, beta)


def nonclique_interval(rep: EpgRepresentation, Y: Iterable[str], row_a: int, row_b: int) -> TypedInterval:
    """A proper typed interval on ``row_a`` intersected by every vertex of ``Y``.

    Every vertex of ``Y`` must have index exactly ``{row_a, row_b}`` and the
    projection graph of ``Y`` on ``row_a`` must not be a clique.
    """
    vs = list(Y)
    for v in vs:
        idx = rep.path(v).rows()
        if idx != {row_a, row_b}:
            raise TypedIntervalError(f"vertex {v!r} has index {sorted(idx)}, expected {{{row_a}, {row_b}}}")
    if projection_graph(rep, vs, row_a).is_clique(vs):
        raise TypedIntervalError(f"projection of {sorted(vs)} on row {row_a} is a clique")
    tups = [as_tuple(t_projection(rep, v, row_a).interval) for v in vs]
    beta = max(t[0] for t in tups)
    alpha = min(t[2] for t in tups)
    x = _unanimous([t[3] for t in tups if t[2] == alpha])
    y = _unanimous([t[1] for t in tups if t[0] == beta])
    a2 = alpha if x != "." else alpha - 1
    b2 = beta if y != "." else beta + 1
    return TypedInterval.make(row_a, x, a2, y, b2)


# --- 2-track encoding -----------------------------------------------------------

@dataclass(frozen=True)
class HalfOpen:
    """Real interval with per-end closedness."""

    lo: int
    hi: int
    lo_closed: bool
    hi_closed: bool

    def has_point(self, x) -> bool:
        if self.lo < x < self.hi:
            return True
        return (x == self.lo and self.lo_closed) or (x == self.hi and self.hi_closed)

    def meets(self, other: HalfOpen) -> bool:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo < hi:
            return True
        return lo == hi and self.has_point(lo) and other.has_point(lo)

    def __str__(self):
        return f"{'[' if self.lo_closed else '('}{self.lo},{self.hi}{']' if self.hi_closed else ')'}"


@dataclass(frozen=True)
class TwoTrackInterval:
    vertex_id: str
    track_a: HalfOpen
    track_b: HalfOpen

    def meets(self, other: TwoTrackInterval) -> bool:
        return self.track_a.meets(other.track_a) or self.track_b.meets(other.track_b)


def _track(tup) -> HalfOpen:
    lo, lt, hi, rt = tup
    if rt != ".":
        return HalfOpen(lo, hi, False, True)
    return HalfOpen(lo, hi, True, False)


def two_track_encoding(rep: EpgRepresentation, vertex_set_ab: Iterable[str], row_a: int, row_b: int
                       ) -> list[TwoTrackInterval]:
    """Encode vertices of index ``{row_a, row_b}`` as 2-track intervals: the
    bend side of each row interval is closed, the free end open."""
    out = []
    for v in vertex_set_ab:
        path = rep.path(v)
        if path.rows() != {row_a, row_b}:
            raise TypedIntervalError(f"vertex {v!r} has index {sorted(path.rows())}, expected {{{row_a}, {row_b}}}")
        out.append(TwoTrackInterval(v, _track(projection_tuple(path, row_a)), _track(projection_tuple(path, row_b))))
    return out
