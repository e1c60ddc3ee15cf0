"""Generic clique routines on bitset graphs.

Vertices are numbered by their position in the sorted id order, so the
lexicographically smallest member set is the one whose sorted index tuple is
smallest.  Among cliques of equal size every routine here returns that one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .grid import DerivedGraph


@dataclass(frozen=True)
class CliqueResult:
    members: tuple[str, ...]
    witness: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    @property
    def size(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)


def bits(mask: int):
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _color_bound(adj: Sequence[int], cand: int) -> int:
    """Number of colours of a greedy colouring of ``cand``: an upper bound on
    the clique number of the induced subgraph."""
    colours = 0
    rest = cand
    while rest:
        colours += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            rest &= ~(1 << v)
            avail &= ~adj[v] & ~(1 << v)
    return colours


def clique_number(adj: Sequence[int], cand: int, lower: int = 0) -> int:
    """Size of a maximum clique inside ``cand`` (branch and bound with a
    Bron-Kerbosch pivot and a greedy-colouring bound).  Returns ``lower``
    when no clique larger than ``lower`` exists."""
    best = lower

    def expand(size, P, X):
        nonlocal best
        if not P:
            if size > best:
                best = size
            return
        if size + popcount(P) <= best or size + _color_bound(adj, P) <= best:
            return
        PX = P | X
        pivot, pivot_deg = -1, -1
        for u in bits(PX):
            d = popcount(P & adj[u])
            if d > pivot_deg:
                pivot, pivot_deg = u, d
        for v in bits(P & ~adj[pivot]):
            expand(size + 1, P & adj[v], X & adj[v])
            P &= ~(1 << v)
            X |= 1 << v
            if size + popcount(P) <= best:
                return

    expand(0, cand, 0)
    return best


def first_clique_of_size(adj: Sequence[int], cand: int, target: int) -> list[int] | None:
    """Lexicographically smallest clique of exactly ``target`` vertices in ``cand``."""

    def search(need, P):
        if need == 0:
            return []
        for v in bits(P):
            rest = P & adj[v] & ~((1 << (v + 1)) - 1)
            if popcount(rest) < need - 1:
                continue
            if need - 1 > 1 and _color_bound(adj, rest) < need - 1:
                continue
            sub = search(need - 1, rest)
            if sub is not None:
                return [v] + sub
        return None

    if target == 0:
        return []
    return search(target, cand)


def max_clique_mask(adj: Sequence[int], cand: int) -> list[int]:
    """Lexicographically smallest maximum clique of the subgraph induced by ``cand``."""
    if not cand:
        return []
    omega = clique_number(adj, cand)
    found = first_clique_of_size(adj, cand, omega)
    assert found is not None
    return found


def max_clique_exact(graph: DerivedGraph) -> CliqueResult:
    """Maximum clique by exhaustive branch and bound (the verification oracle)."""
    order, adj = graph.bitsets()
    full = (1 << len(order)) - 1
    members = max_clique_mask(adj, full)
    return CliqueResult(tuple(order[i] for i in members))


def enumerate_maximal_cliques(graph: DerivedGraph) -> list[tuple[str, ...]]:
    """All inclusion-maximal cliques (Bron-Kerbosch with Tomita pivoting).

    Exponential in general; intended for graphs of about 20 vertices or fewer.
    """
    order, adj = graph.bitsets()
    out: list[tuple[int, ...]] = []

    def bk(R, P, X):
        if not P and not X:
            out.append(tuple(R))
            return
        pivot = max(bits(P | X), key=lambda u: popcount(P & adj[u]))
        for v in bits(P & ~adj[pivot]):
            bk(R + [v], P & adj[v], X & adj[v])
            P &= ~(1 << v)
            X |= 1 << v

    if order:
        bk([], (1 << len(order)) - 1, 0)
    return sorted(tuple(order[i] for i in sorted(c)) for c in out)


# --- co-bipartite graphs ---------------------------------------------------------

def _max_matching(left: list[int], right_nbrs: dict[int, int]) -> dict[int, int]:
    """Maximum bipartite matching by repeated augmenting-path search (Kuhn).

    ``right_nbrs[l]`` is the bitmask of right vertices adjacent to ``l``.
    Returns ``{right: left}``.
    """
    match_r: dict[int, int] = {}

    def augment(l, seen):
        for r in bits(right_nbrs[l] & ~seen[0]):
            seen[0] |= 1 << r
            if r not in match_r or augment(match_r[r], seen):
                match_r[r] = l
                return True
        return False

    for l in left:
        augment(l, [0])
    return match_r


def konig_cover(left: list[int], right_nbrs: dict[int, int], match_r: dict[int, int]) -> tuple[int, int]:
    """Minimum vertex cover from a maximum matching (König).  Returns the
    cover as (left mask, right mask)."""
    match_l = {l: r for r, l in match_r.items()}
    reached_l = 0
    reached_r = 0
    stack = [l for l in left if l not in match_l]
    for l in stack:
        reached_l |= 1 << l
    while stack:
        l = stack.pop()
        for r in bits(right_nbrs[l] & ~reached_r):
            reached_r |= 1 << r
            l2 = match_r.get(r)
            if l2 is not None and not reached_l >> l2 & 1:
                reached_l |= 1 << l2
                stack.append(l2)
    left_mask = mask_of(left)
    return left_mask & ~reached_l, reached_r


def cobipartite_clique_mask(adj: Sequence[int], part1: int, part2: int, lexmin: bool = True) -> int:
    """Maximum clique of the graph induced by ``part1 | part2`` where both
    parts are cliques.

    The non-edges between the parts form a bipartite graph; a maximum clique
    is a maximum independent set of it, i.e. the complement of a minimum
    vertex cover, which König's theorem reads off a maximum matching.  With
    ``lexmin`` the lexicographically smallest maximum clique is returned
    (one extra matching per vertex).
    """
    left = list(bits(part1))
    nbrs = {l: part2 & ~adj[l] for l in left}
    match_r = _max_matching(left, nbrs)
    cover_l, cover_r = konig_cover(left, nbrs, match_r)
    best = (part1 & ~cover_l) | (part2 & ~cover_r)
    if not lexmin:
        return best
    target = popcount(part1 | part2) - len(match_r)
    chosen, size = 0, 0
    p1, p2 = part1, part2  # undecided vertices, all larger than the current one
    while (p1 | p2) and size < target:
        rest = p1 | p2
        v = (rest & -rest).bit_length() - 1
        t1, t2 = p1 & adj[v], p2 & adj[v]
        if size + 1 + cobipartite_clique_size(adj, t1, t2) == target:
            chosen |= 1 << v
            size += 1
            p1, p2 = t1, t2
        else:
            p1 &= ~(1 << v)
            p2 &= ~(1 << v)
    return chosen


def cobipartite_clique_size(adj: Sequence[int], part1: int, part2: int) -> int:
    left = list(bits(part1))
    nbrs = {l: part2 & ~adj[l] for l in left}
    return popcount(part1 | part2) - len(_max_matching(left, nbrs))


def max_clique_cobipartite(graph: DerivedGraph, part1: Iterable[str], part2: Iterable[str]) -> CliqueResult:
    p1, p2 = set(part1), set(part2)
    if p1 & p2 or (p1 | p2) != set(graph.vertices):
        raise ValueError("parts must partition the vertex set")
    for name, part in (("part1", p1), ("part2", p2)):
        if not graph.is_clique(sorted(part)):
            raise ValueError(f"{name} is not a clique")
    order, adj = graph.bitsets()
    pos = {v: i for i, v in enumerate(order)}
    m = cobipartite_clique_mask(adj, mask_of(pos[v] for v in p1), mask_of(pos[v] for v in p2))
    return CliqueResult(tuple(order[i] for i in bits(m)))
