"""Instance generators, fixtures from the literature, and the oracle harness."""

from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .cliques import max_clique_exact
from .grid import (EpgRepresentation, GridPath, PathError, derive_graph, serialize_representation,
                   transpose_representation, vertex_kinds)


class GridTooSmallError(ValueError):
    pass


@dataclass(frozen=True)
class GenConfig:
    n: int
    k: int = 2
    rows: int = 20
    cols: int = 20
    seed: int = 0


def _check(config: GenConfig):
    if config.n < 0 or config.k < 0:
        raise ValueError(f"bad config {config}")
    if config.rows < 1 or config.cols < 1 or (config.rows < 2 and config.cols < 2):
        raise GridTooSmallError(f"a {config.rows}x{config.cols} grid has no edge to host a path")


def _random_path(rng: random.Random, vid: str, k: int, rows: int, cols: int, p_stop: float = 0.35
                 ) -> GridPath | None:
    r, c = rng.randrange(rows), rng.randrange(cols)
    turns = rng.randint(0, k)
    axis = rng.choice((0, 1))  # 0: move along a row, 1: along a column
    corners = [(r, c)]
    for _ in range(turns + 1):
        options = []
        for sign in (1, -1):
            if axis == 0:
                room = (cols - 1 - c) if sign > 0 else c
            else:
                room = (rows - 1 - r) if sign > 0 else r
            if room > 0:
                options.append((sign, room))
        if not options:
            break
        sign, room = rng.choice(options)
        length = 1
        while length < room and rng.random() > p_stop:
            length += 1
        if axis == 0:
            c += sign * length
        else:
            r += sign * length
        corners.append((r, c))
        axis ^= 1
    if len(corners) < 2:
        return None
    try:
        return GridPath(vid, tuple(corners))
    except PathError:
        return None


def gen_random_bk(config: GenConfig, max_tries: int = 1000) -> EpgRepresentation:
    """``n`` random paths with at most ``k`` bends inside a ``rows x cols`` grid.

    Each path picks a start, a number of turns in ``[0, k]`` and geometric
    segment lengths clipped to the grid; self-overlapping paths are resampled.
    """
    _check(config)
    rng = random.Random(config.seed)
    paths = []
    for i in range(config.n):
        for _ in range(max_tries):
            p = _random_path(rng, f"v{i}", config.k, config.rows, config.cols)
            if p is not None:
                break
        else:
            raise GridTooSmallError(f"could not place path v{i} in a {config.rows}x{config.cols} grid")
        paths.append(p)
    return EpgRepresentation(tuple(paths), config.k)


def gen_random_z_only(config: GenConfig) -> EpgRepresentation:
    """``n`` random Z-vertices: a horizontal piece on one row, a vertical piece
    on one column, a horizontal piece on a second row."""
    _check(config)
    if config.rows < 2 or config.cols < 2:
        raise GridTooSmallError("Z-vertices need at least two rows and two columns")
    rng = random.Random(config.seed)
    paths = []
    for i in range(config.n):
        r1, r2 = rng.sample(range(config.rows), 2)
        c = rng.randrange(config.cols)
        ends = []
        for _ in range(2):
            side = [x for x in range(config.cols) if x != c]
            ends.append(rng.choice(side))
        paths.append(GridPath(f"v{i}", ((r1, ends[0]), (r1, c), (r2, c), (r2, ends[1]))))
    return EpgRepresentation(tuple(paths), 2)


def gen_random_b2_mixed(config: GenConfig) -> EpgRepresentation:
    """Random B2 instance built from 2-bend paths of both kinds plus some
    0/1-bend paths; a ``k=2`` :func:`gen_random_bk` with a higher bend rate."""
    _check(config)
    rng = random.Random(config.seed)
    paths = []
    for i in range(config.n):
        while True:
            p = _random_path(rng, f"v{i}", 2, config.rows, config.cols)
            if p is not None and (p.bends == 2 or rng.random() < 0.3):
                break
        paths.append(p)
    return EpgRepresentation(tuple(paths), 2)


def gen_kn_minus_matching(m: int) -> EpgRepresentation:
    """``K_m`` minus a perfect matching, drawn with U-paths (one row, two columns).

    Pairs ``(a_i, b_i)`` are built as staggered Z shapes on rows 0 and 2 and
    the grid is then transposed.  The ``a`` paths share their first piece,
    the ``b`` paths share their last piece, ``a_i`` and ``b_j`` overlap on the
    first piece when ``j < i`` and on the last when ``j > i``, and ``a_i``
    and ``b_i`` only touch at grid points.
    """
    if m < 2 or m % 2:
        raise ValueError(f"m must be an even integer >= 2, got {m!r}")
    p = m // 2
    top = 3 * (p + 1)
    paths = []
    for i in range(p):
        a = ((0, 0), (0, 1 + i), (2, 1 + i), (2, 2 * (p + 1) - i))
        b = ((0, 1 + i), (0, 2 * (p + 1) - i), (2, 2 * (p + 1) - i), (2, top))
        paths.append(GridPath(f"a{i}", tuple((c, r) for r, c in a)))
        paths.append(GridPath(f"b{i}", tuple((c, r) for r, c in b)))
    return EpgRepresentation(tuple(paths), 2)


def gen_c4_projection_instance() -> EpgRepresentation:
    """Four Z-vertices whose projection graph on row 10 is an induced 4-cycle."""
    return EpgRepresentation.from_corners({
        "v1": [(10, 1), (10, 5), (12, 5), (12, 7)],
        "v2": [(7, 4), (7, 5), (10, 5), (10, 9)],
        "v3": [(14, 6), (14, 5), (10, 5), (10, 9)],
        "v4": [(10, 1), (10, 5), (8, 5), (8, 4)],
    })


# --- cross validation ----------------------------------------------------------

@dataclass
class CrossValidationRow:
    instance: str
    n: int
    k: int
    structured: int
    oracle: int
    structured_seconds: float
    oracle_seconds: float
    fixture: str = ""

    @property
    def agree(self) -> bool:
        return self.structured == self.oracle


@dataclass
class CrossValidationReport:
    rows: list[CrossValidationRow] = field(default_factory=list)

    @property
    def mismatches(self) -> list[CrossValidationRow]:
        return [r for r in self.rows if not r.agree]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["instance", "n", "k", "structured", "oracle", "agree",
                    "structured_seconds", "oracle_seconds", "fixture"])
        for r in self.rows:
            w.writerow([r.instance, r.n, r.k, r.structured, r.oracle, int(r.agree),
                        f"{r.structured_seconds:.4f}", f"{r.oracle_seconds:.4f}", r.fixture])
        return buf.getvalue()

    def summary(self) -> str:
        total = len(self.rows)
        agree = total - len(self.mismatches)
        t_s = sum(r.structured_seconds for r in self.rows)
        t_o = sum(r.oracle_seconds for r in self.rows)
        lines = [f"{agree}/{total} instances agree with the exact oracle",
                 f"structured time {t_s:.2f}s, oracle time {t_o:.2f}s"]
        for r in self.mismatches:
            lines.append(f"MISMATCH {r.instance}: structured {r.structured} vs oracle {r.oracle}"
                         + (f" -> {r.fixture}" if r.fixture else ""))
        return "\n".join(lines)


def _structured_for(rep: EpgRepresentation) -> Callable:
    from .b2clique import max_clique_b2
    from .zclique import max_clique_z_only

    if rep.k <= 2 and all(p.bends == 2 for p in rep.paths) and set(vertex_kinds(rep).values()) <= {"Z"}:
        return max_clique_z_only
    return max_clique_b2


def cross_validate(configs: Iterable[GenConfig], family: str = "b2", fixtures_dir: str | Path | None = None
                   ) -> CrossValidationReport:
    """Run the structured algorithm and the exact oracle on generated instances.

    ``family`` is ``"z"`` (Z-only instances) or ``"b2"`` (mixed B2).  A
    mismatch is recorded in the report and, with ``fixtures_dir``, dumped as a
    replayable representation file named after the seed.
    """
    gen = {"z": gen_random_z_only, "b2": gen_random_b2_mixed, "bk": gen_random_bk}[family]
    report = CrossValidationReport()
    for cfg in configs:
        rep = gen(cfg)
        graph = derive_graph(rep)
        algo = _structured_for(rep)
        t0 = time.perf_counter()
        got = algo(rep, graph)
        t1 = time.perf_counter()
        want = max_clique_exact(graph)
        t2 = time.perf_counter()
        row = CrossValidationRow(f"{family}-n{cfg.n}-seed{cfg.seed}", cfg.n, cfg.k, got.size, want.size,
                                 t1 - t0, t2 - t1)
        if not row.agree and fixtures_dir is not None:
            d = Path(fixtures_dir)
            d.mkdir(parents=True, exist_ok=True)
            target = d / f"mismatch-{family}-seed{cfg.seed}.json"
            target.write_text(
                serialize_representation(rep) + "\n"
                + f'{{"structured":{list(got.members)!r},"oracle":{list(want.members)!r}}}\n'.replace("'", '"'),
                encoding="utf-8")
            row.fixture = str(target)
        report.rows.append(row)
    return report


__all__ = [
    "GenConfig", "GridTooSmallError", "gen_random_bk", "gen_random_z_only", "gen_random_b2_mixed",
    "gen_kn_minus_matching", "gen_c4_projection_instance", "cross_validate", "CrossValidationReport",
    "transpose_representation",
]
