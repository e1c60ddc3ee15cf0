"""Edge bound, segment graphs, degeneracy and greedy colouring for B_k graphs.

A B_k graph with clique number w has at most (k+1)(w-1)n edges, so it is
(2(k+1)w - 1)-degenerate and the smallest-last greedy colouring uses at most
2(k+1)w colours.  Nothing here needs the representation except the edge
bound report and the segment graphs, which exist to check that claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .cliques import max_clique_exact
from .grid import DerivedGraph, EpgRepresentation, PathError, derive_graph


@dataclass(frozen=True, order=True)
class CanonicalInterval:
    vertex_id: str
    line: tuple[str, int]  # ("row", r) or ("col", c)
    lo: int
    hi: int

    @property
    def length(self) -> int:
        return self.hi - self.lo


def _straight_pieces(vertex_id: str, corners: Sequence) -> list[tuple[tuple[str, int], int, int]]:
    pts = [tuple(int(x) for x in c) for c in corners]
    if len(pts) < 2:
        raise PathError(vertex_id, 0, "a path needs at least two corners")
    out = []
    for i, ((r1, c1), (r2, c2)) in enumerate(zip(pts, pts[1:])):
        if r1 == r2 and c1 != c2:
            out.append((("row", r1), min(c1, c2), max(c1, c2)))
        elif c1 == c2 and r1 != r2:
            out.append((("col", c1), min(r1, r2), max(r1, r2)))
        else:
            raise PathError(vertex_id, i + 1, "non-axis-aligned or zero-length step")
    return out


def canonical_intervals_of_corners(vertex_id: str, corners: Sequence) -> list[CanonicalInterval]:
    """Canonical intervals of one polyline given as raw corners.

    Unlike :class:`~epgclique.grid.GridPath` this accepts polylines that run
    over a grid edge twice, which is exactly when merging matters.
    """
    per_line: dict[tuple[str, int], list[list[int]]] = {}
    for line, lo, hi in _straight_pieces(vertex_id, corners):
        per_line.setdefault(line, []).append([lo, hi])
    out = []
    for line, spans in per_line.items():
        spans.sort()
        merged = [spans[0]]
        for lo, hi in spans[1:]:
            if lo < merged[-1][1]:  # shares at least one unit edge
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        out.extend(CanonicalInterval(vertex_id, line, lo, hi) for lo, hi in merged)
    return sorted(out)


def canonical_intervals(rep: EpgRepresentation | Mapping[str, Sequence]) -> list[CanonicalInterval]:
    """Maximal straight pieces of every path, merged per vertex and line
    when they share an edge.  Accepts a representation or a mapping from
    vertex id to raw corner lists."""
    if isinstance(rep, EpgRepresentation):
        items = [(p.vertex_id, [c.as_tuple() for c in p.corners]) for p in rep.paths]
    else:
        items = list(rep.items())
    out = []
    for vid, corners in items:
        out.extend(canonical_intervals_of_corners(vid, corners))
    return sorted(out)


@dataclass
class SegmentGraphs:
    """Interval graphs of canonical intervals, one per grid line, and their
    disjoint union G_s."""

    lines: dict[tuple[str, int], list[CanonicalInterval]]
    edges: list[tuple[CanonicalInterval, CanonicalInterval]]
    omega: int  # clique number of G_s
    q: int  # most distinct paths through one grid edge

    @property
    def vertex_count(self) -> int:
        return sum(len(v) for v in self.lines.values())

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def _max_load(spans: Iterable[tuple[int, int]]) -> int:
    events = []
    for lo, hi in spans:
        events.append((lo, 1))
        events.append((hi, -1))
    events.sort()  # at equal coordinates a closing span ends before an opening one
    load = best = 0
    for _, d in events:
        load += d
        best = max(best, load)
    return best


def segment_graphs(rep: EpgRepresentation | Mapping[str, Sequence]) -> SegmentGraphs:
    ivs = canonical_intervals(rep)
    lines: dict[tuple[str, int], list[CanonicalInterval]] = {}
    for iv in ivs:
        lines.setdefault(iv.line, []).append(iv)
    edges = []
    omega = 0
    edge_users: dict[tuple, set] = {}
    for line, group in sorted(lines.items()):
        group.sort(key=lambda iv: (iv.lo, iv.hi, iv.vertex_id))
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                if b.lo >= a.hi:
                    break
                edges.append((a, b))
        omega = max(omega, _max_load((iv.lo, iv.hi) for iv in group))
        for iv in group:
            for x in range(iv.lo, iv.hi):
                edge_users.setdefault((line, x), set()).add(iv.vertex_id)
    q = max((len(s) for s in edge_users.values()), default=0)
    return SegmentGraphs(lines, edges, omega, q)


def degeneracy_order(graph: DerivedGraph) -> tuple[list[str], int]:
    """Smallest-last elimination: repeatedly remove a vertex of minimum
    remaining degree (ties by id).  Returns the removal order and the
    largest degree seen at removal time."""
    deg = {v: len(graph.neighbors(v)) for v in graph.vertices}
    alive = set(graph.vertices)
    order = []
    degeneracy = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        degeneracy = max(degeneracy, deg[v])
        order.append(v)
        alive.remove(v)
        for w in graph.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return order, degeneracy


@dataclass
class ColoringResult:
    assignment: dict[str, int]
    colors_used: int
    degeneracy: int = 0
    order: list[str] = field(default_factory=list)

    def classes(self) -> dict[int, tuple[str, ...]]:
        out: dict[int, list[str]] = {}
        for v, c in self.assignment.items():
            out.setdefault(c, []).append(v)
        return {c: tuple(sorted(vs)) for c, vs in sorted(out.items())}

    def is_proper(self, graph: DerivedGraph) -> bool:
        return all(self.assignment[u] != self.assignment[v] for u, v in graph.edges())


def greedy_color(graph: DerivedGraph) -> ColoringResult:
    """Colour in reverse degeneracy order with the smallest free colour.
    Each vertex has at most ``degeneracy`` earlier-coloured neighbours."""
    order, d = degeneracy_order(graph)
    colour: dict[str, int] = {}
    for v in reversed(order):
        taken = {colour[w] for w in graph.neighbors(v) if w in colour}
        c = 1
        while c in taken:
            c += 1
        colour[v] = c
    used = max(colour.values(), default=0)
    return ColoringResult(dict(sorted(colour.items())), used, d, order)


@dataclass(frozen=True)
class EdgeBoundReport:
    n: int
    k: int
    edges: int
    omega: int
    bound: int
    passed: bool


def edge_bound_check(rep: EpgRepresentation, omega: int | None = None,
                     graph: DerivedGraph | None = None) -> EdgeBoundReport:
    """Check |E| <= (k+1)(w-1)n.  ``omega`` defaults to the exact clique number."""
    graph = graph or derive_graph(rep)
    if omega is None:
        omega = max_clique_exact(graph).size
    n, k = len(graph), rep.k
    bound = (k + 1) * max(omega - 1, 0) * n
    e = graph.edge_count()
    return EdgeBoundReport(n, k, e, omega, bound, e <= bound)


def meets_ramsey_bound(size: int, n: int, k: int) -> bool:
    """``size >= sqrt(n / (2(k+1)))`` in exact integer arithmetic."""
    return size * size * 2 * (k + 1) >= n


def clique_or_stable_set(graph: DerivedGraph, k: int) -> tuple[str, tuple[str, ...]]:
    """A clique or a stable set with at least sqrt(n / (2(k+1))) vertices.

    The largest colour class of the greedy colouring is tried first (ties by
    member order).  When it is too small the graph has a large clique, which
    is taken from the exact solver; that step is exponential in the worst case.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = len(graph)
    res = greedy_color(graph)
    classes = sorted(res.classes().values(), key=lambda c: (-len(c), c))
    largest = classes[0] if classes else ()
    if meets_ramsey_bound(len(largest), n, k):
        return "stable", largest
    clique = max_clique_exact(graph).members
    if not meets_ramsey_bound(len(clique), n, k):
        raise ValueError(f"neither a stable set nor a clique reaches sqrt({n}/{2 * (k + 1)}); "
                         f"is the graph really B_{k}?")
    return "clique", clique


__all__ = [
    "CanonicalInterval", "SegmentGraphs", "ColoringResult", "EdgeBoundReport", "canonical_intervals",
    "canonical_intervals_of_corners", "segment_graphs", "degeneracy_order", "greedy_color", "edge_bound_check",
    "clique_or_stable_set", "meets_ramsey_bound",
]
