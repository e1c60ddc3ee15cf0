"""Grid points, paths, EPG representations and the derived intersection graph.

Orientation convention: row ``r + 1`` lies above row ``r`` and column ``c + 1``
lies right of column ``c``.  Every "up"/"down" bend type elsewhere in the
package is read off this convention.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

Edge = tuple[tuple[int, int], tuple[int, int]]


class PathError(ValueError):
    """Invalid path geometry.  Names the vertex and the offending corner."""

    def __init__(self, vertex_id, corner_index, reason):
        self.vertex_id = vertex_id
        self.corner_index = corner_index
        self.reason = reason
        where = f"vertex {vertex_id!r}"
        if corner_index is not None:
            where += f", corner {corner_index}"
        super().__init__(f"{where}: {reason}")


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GridPoint:
    row: int
    col: int

    def __post_init__(self):
        if not (_is_int(self.row) and _is_int(self.col)):
            raise TypeError("grid coordinates must be integers")
        if self.row < 0 or self.col < 0:
            raise ValueError(f"negative grid coordinate ({self.row}, {self.col})")

    def as_tuple(self) -> tuple[int, int]:
        return (self.row, self.col)


def _unit_edges(p: GridPoint, q: GridPoint) -> Iterator[Edge]:
    if p.row == q.row:
        lo, hi = sorted((p.col, q.col))
        for c in range(lo, hi):
            yield ((p.row, c), (p.row, c + 1))
    else:
        lo, hi = sorted((p.row, q.row))
        for r in range(lo, hi):
            yield ((r, p.col), (r + 1, p.col))


@dataclass(frozen=True)
class GridPath:
    """An axis-aligned polyline given by its endpoints and bend points."""

    vertex_id: str
    corners: tuple[GridPoint, ...]

    def __post_init__(self):
        pts = []
        for i, c in enumerate(self.corners):
            if isinstance(c, GridPoint):
                pts.append(c)
                continue
            try:
                r, col = c
                pts.append(GridPoint(r, col))
            except (TypeError, ValueError) as exc:
                raise PathError(self.vertex_id, i, f"bad corner {c!r} ({exc})") from None
        object.__setattr__(self, "corners", tuple(pts))
        self._validate()

    def _validate(self):
        pts = self.corners
        if len(pts) < 2:
            raise PathError(self.vertex_id, None, "a path needs at least two corners (no edge)")
        for i in range(1, len(pts)):
            p, q = pts[i - 1], pts[i]
            if p == q:
                raise PathError(self.vertex_id, i, "repeated corner")
            if p.row != q.row and p.col != q.col:
                raise PathError(self.vertex_id, i, "non-axis-aligned step")
        for i in range(1, len(pts) - 1):
            if _horizontal(pts[i - 1], pts[i]) == _horizontal(pts[i], pts[i + 1]):
                raise PathError(self.vertex_id, i, "collinear segments: interior corner is not a bend")
        seen = set()
        for i in range(1, len(pts)):
            for e in _unit_edges(pts[i - 1], pts[i]):
                if e in seen:
                    raise PathError(self.vertex_id, i, f"repeated grid edge {e}")
                seen.add(e)

    @property
    def bends(self) -> int:
        return len(self.corners) - 2

    def segments(self) -> list[tuple[GridPoint, GridPoint]]:
        return list(zip(self.corners, self.corners[1:]))

    @property
    def length(self) -> int:
        return sum(abs(p.row - q.row) + abs(p.col - q.col) for p, q in self.segments())

    def grid_edges(self) -> frozenset[Edge]:
        return grid_edges(self)

    def rows(self) -> frozenset[int]:
        """Rows carrying at least one edge of the path (the index)."""
        return frozenset(p.row for p, q in self.segments() if p.row == q.row)

    def columns(self) -> frozenset[int]:
        return frozenset(p.col for p, q in self.segments() if p.col == q.col)

    def transposed(self) -> GridPath:
        return GridPath(self.vertex_id, tuple(GridPoint(p.col, p.row) for p in self.corners))


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _horizontal(p: GridPoint, q: GridPoint) -> bool:
    return p.row == q.row


def grid_edges(path: GridPath) -> frozenset[Edge]:
    """Every unit grid edge covered by the path, as ``((r, c), (r', c'))`` pairs
    with the lower/left endpoint first."""
    out = set()
    for p, q in path.segments():
        out.update(_unit_edges(p, q))
    return frozenset(out)


@dataclass(frozen=True)
class EpgRepresentation:
    """One path per vertex plus the bend budget ``k``."""

    paths: tuple[GridPath, ...]
    k: int = 2

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(self.paths))
        if not _is_int(self.k) or self.k < 0:
            raise RepresentationError(f"bend budget must be a non-negative integer, got {self.k!r}")
        seen = set()
        for p in self.paths:
            if p.vertex_id in seen:
                raise PathError(p.vertex_id, None, "duplicate vertex id")
            seen.add(p.vertex_id)
            if p.bends > self.k:
                raise PathError(p.vertex_id, None, f"{p.bends} bends exceed the budget k={self.k}")

    @classmethod
    def from_corners(cls, corners: Mapping[str, Sequence] | Iterable[tuple[str, Sequence]], k: int = 2):
        items = corners.items() if isinstance(corners, Mapping) else corners
        return cls(tuple(GridPath(str(vid), tuple(cs)) for vid, cs in items), k)

    @cached_property
    def by_id(self) -> dict[str, GridPath]:
        return {p.vertex_id: p for p in self.paths}

    @property
    def ids(self) -> list[str]:
        return [p.vertex_id for p in self.paths]

    def path(self, vertex_id: str) -> GridPath:
        try:
            return self.by_id[vertex_id]
        except KeyError:
            raise KeyError(f"unknown vertex {vertex_id!r}") from None

    def __len__(self):
        return len(self.paths)

    def restrict(self, vertex_ids: Iterable[str]) -> EpgRepresentation:
        keep = set(vertex_ids)
        return EpgRepresentation(tuple(p for p in self.paths if p.vertex_id in keep), self.k)

    def max_row(self) -> int:
        return max((c.row for p in self.paths for c in p.corners), default=-1)

    def max_col(self) -> int:
        return max((c.col for p in self.paths for c in p.corners), default=-1)


@dataclass(frozen=True)
class DerivedGraph:
    """Simple undirected graph on string vertex ids.

    ``vertices`` is kept sorted so that every algorithm in the package sees
    the same (lexicographic) vertex order.
    """

    vertices: tuple[str, ...]
    adj: Mapping[str, frozenset[str]] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        for v in self.vertices:
            nb = self.adj.get(v, frozenset())
            if v in nb:
                raise ValueError(f"self-loop at {v!r}")
            for u in nb:
                if v not in self.adj.get(u, ()):
                    raise ValueError(f"asymmetric adjacency {v!r}-{u!r}")

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable[tuple]) -> DerivedGraph:
        vs = [str(v) for v in vertices]
        adj: dict[str, set[str]] = {v: set() for v in vs}
        for a, b in edges:
            a, b = str(a), str(b)
            if a == b:
                raise ValueError(f"self-loop at {a!r}")
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        return cls(tuple(adj), {v: frozenset(s) for v, s in adj.items()})

    def __len__(self):
        return len(self.vertices)

    def neighbors(self, v: str) -> frozenset[str]:
        return self.adj.get(v, frozenset())

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.neighbors(u)

    def edges(self) -> list[tuple[str, str]]:
        return [(u, v) for u in self.vertices for v in sorted(self.neighbors(u)) if u < v]

    def edge_count(self) -> int:
        return sum(len(self.neighbors(v)) for v in self.vertices) // 2

    def subgraph(self, vertices: Iterable[str]) -> DerivedGraph:
        keep = set(vertices)
        return DerivedGraph(tuple(keep), {v: self.neighbors(v) & keep for v in keep})

    def complement(self) -> DerivedGraph:
        vs = set(self.vertices)
        return DerivedGraph(self.vertices, {v: frozenset(vs - self.neighbors(v) - {v}) for v in vs})

    def is_clique(self, members: Iterable[str]) -> bool:
        ms = list(members)
        return all(self.has_edge(a, b) for i, a in enumerate(ms) for b in ms[i + 1:])

    def is_stable(self, members: Iterable[str]) -> bool:
        ms = list(members)
        return not any(self.has_edge(a, b) for i, a in enumerate(ms) for b in ms[i + 1:])

    def __eq__(self, other):
        if not isinstance(other, DerivedGraph):
            return NotImplemented
        return self.vertices == other.vertices and all(
            self.neighbors(v) == other.neighbors(v) for v in self.vertices)

    def __hash__(self):
        return hash((self.vertices, tuple(self.edges())))

    def bitsets(self) -> tuple[list[str], list[int]]:
        """Vertex order and adjacency bitmasks (bit ``i`` = ``order[i]``)."""
        order = list(self.vertices)
        pos = {v: i for i, v in enumerate(order)}
        masks = []
        for v in order:
            m = 0
            for u in self.neighbors(v):
                m |= 1 << pos[u]
            masks.append(m)
        return order, masks


def derive_graph(rep: EpgRepresentation) -> DerivedGraph:
    """Edge-intersection graph: two vertices are adjacent iff their paths share a grid edge."""
    owners: dict[Edge, list[str]] = defaultdict(list)
    for p in rep.paths:
        for e in grid_edges(p):
            owners[e].append(p.vertex_id)
    adj: dict[str, set[str]] = {p.vertex_id: set() for p in rep.paths}
    for vs in owners.values():
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                adj[a].add(b)
                adj[b].add(a)
    return DerivedGraph(tuple(adj), {v: frozenset(s) for v, s in adj.items()})


# --- classification -------------------------------------------------------

@dataclass(frozen=True)
class VertexClass:
    kind: str  # "Z" or "U"
    index: frozenset[int]
    columns: frozenset[int]


def classify_vertex(path: GridPath) -> VertexClass:
    if path.bends != 2:
        raise PathError(path.vertex_id, None, f"classification needs exactly 2 bends, got {path.bends}")
    s0, s1, _ = path.segments()
    kind = "U" if _horizontal(*s1) else "Z"
    return VertexClass(kind, path.rows(), path.columns())


def vertex_kinds(rep: EpgRepresentation) -> dict[str, str]:
    return {p.vertex_id: classify_vertex(p).kind for p in rep.paths}


def transpose_representation(rep: EpgRepresentation) -> EpgRepresentation:
    """Swap rows and columns (rotation + mirror); the derived graph is unchanged."""
    return EpgRepresentation(tuple(p.transposed() for p in rep.paths), rep.k)


# --- normalization ----------------------------------------------------------

def normalize_two_bends(rep: EpgRepresentation) -> EpgRepresentation:
    """Return an equivalent representation in which every path has exactly two bends.

    Coordinates are first multiplied by ``2n + 2`` so that every unit edge of
    the input becomes a run of ``2n + 2`` unit edges and the lines strictly
    inside that run are used by no path.  A path endpoint whose terminal
    edge is horizontal is then moved onto a fresh column inside that run and
    given a one-unit upward stub; vertical terminal edges get a fresh row and
    a rightward stub.  Within one run, stubs of paths that continue towards
    increasing coordinates are allocated first, so any two paths that shared
    the original terminal edge still share a unit edge afterwards.
    """
    for p in rep.paths:
        if p.bends > 2:
            raise PathError(p.vertex_id, None, f"{p.bends} bends: only B2 paths can be normalized")
    if all(p.bends == 2 for p in rep.paths):
        return rep if rep.k == 2 else EpgRepresentation(rep.paths, 2)

    s = 2 * len(rep.paths) + 2
    scaled = {p.vertex_id: [(c.row * s, c.col * s) for c in p.corners] for p in rep.paths}

    # stub request: (vertex, which end) -> gap key; gap key identifies the run
    # of the original terminal edge; "forward" = path continues to larger coords
    requests: dict[tuple, list[tuple[bool, str, int]]] = defaultdict(list)
    for p in rep.paths:
        ends = []
        if p.bends == 0:
            ends = [0, -1]
        elif p.bends == 1:
            ends = [0]
        pts = scaled[p.vertex_id]
        for end in ends:
            (r, c) = pts[end]
            (r2, c2) = pts[1] if end == 0 else pts[-2]
            if r == r2:
                forward = c2 > c
                lo = c if forward else c - s
                key = ("h", r, lo)
            else:
                forward = r2 > r
                lo = r if forward else r - s
                key = ("v", c, lo)
            requests[key].append((forward, p.vertex_id, end))

    fresh: dict[tuple[str, int], int] = {}
    for key, reqs in requests.items():
        lo = key[2]
        ordered = sorted(reqs, key=lambda t: (not t[0], t[1], t[2]))
        for offset, (_, vid, end) in enumerate(ordered, start=1):
            fresh[(vid, end)] = lo + offset

    new_paths = []
    for p in rep.paths:
        pts = list(scaled[p.vertex_id])
        for end in ([0, -1] if p.bends == 0 else [0] if p.bends == 1 else []):
            coord = fresh[(p.vertex_id, end)]
            r, c = pts[end]
            r2, c2 = pts[1] if end == 0 else pts[-2]
            if r == r2:
                moved, stub = (r, coord), (r + 1, coord)
            else:
                moved, stub = (coord, c), (coord, c + 1)
            if end == 0:
                pts[0] = moved
                pts.insert(0, stub)
            else:
                pts[-1] = moved
                pts.append(stub)
        new_paths.append(GridPath(p.vertex_id, tuple(pts)))
    return EpgRepresentation(tuple(new_paths), 2)


# --- file format -------------------------------------------------------------

def serialize_representation(rep: EpgRepresentation) -> str:
    obj = {
        "k": rep.k,
        "paths": [{"id": p.vertex_id, "corners": [[c.row, c.col] for c in p.corners]} for p in rep.paths],
    }
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def parse_representation(text: str) -> EpgRepresentation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RepresentationError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or "paths" not in obj:
        raise RepresentationError("expected an object with a 'paths' list")
    k = obj.get("k", 2)
    if not _is_int(k) or k < 0:
        raise RepresentationError(f"bad bend budget {k!r}")
    paths = []
    for i, entry in enumerate(obj["paths"]):
        if not isinstance(entry, dict) or "id" not in entry or "corners" not in entry:
            raise RepresentationError(f"path entry {i}: expected {{'id', 'corners'}}")
        vid = str(entry["id"])
        corners = entry["corners"]
        if not isinstance(corners, list):
            raise PathError(vid, None, "corners must be a list")
        for j, c in enumerate(corners):
            if not (isinstance(c, list) and len(c) == 2 and all(_is_int(x) for x in c)):
                raise PathError(vid, j, f"corner must be an [row, col] integer pair, got {c!r}")
        paths.append(GridPath(vid, tuple(tuple(c) for c in corners)))
    return EpgRepresentation(tuple(paths), k)


def load_representation(path) -> EpgRepresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_representation(fh.read())


def save_representation(rep: EpgRepresentation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_representation(rep) + "\n")
