"""Command-line front end: ``epgclique <command> ...``.

Exit codes: 0 success, 1 input error, 2 time budget exhausted,
3 oracle mismatch or failed bound.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .b2clique import BudgetExceeded, max_clique_b2
from .cliques import max_clique_exact
from .coloring import edge_bound_check, greedy_color, segment_graphs
from .grid import (EpgRepresentation, PathError, RepresentationError, derive_graph, load_representation,
                   normalize_two_bends, save_representation, vertex_kinds)
from .svg import render_svg
from .testkit import (GenConfig, GridTooSmallError, cross_validate, gen_c4_projection_instance,
                      gen_kn_minus_matching, gen_random_b2_mixed, gen_random_bk, gen_random_z_only)
from .zclique import NotZOnlyError, max_clique_z_only

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_MISMATCH = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _load(path: str) -> EpgRepresentation:
    try:
        return load_representation(path)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from None
    except (PathError, RepresentationError, ValueError) as e:
        raise InputError(f"{path}: {e}") from None


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _kind_counts(rep: EpgRepresentation) -> dict[str, int] | None:
    if any(p.bends > 2 for p in rep.paths):
        return None
    kinds = vertex_kinds(normalize_two_bends(rep)).values()
    return {"Z": sum(1 for k in kinds if k == "Z"), "U": sum(1 for k in kinds if k == "U")}


def cmd_stats(args) -> int:
    from .coloring import degeneracy_order

    rep = _load(args.input)
    g = derive_graph(rep)
    counts = _kind_counts(rep)
    _, d = degeneracy_order(g)
    payload = {"n": len(rep), "k": rep.k, "edges": g.edge_count(), "degeneracy": d,
               "Z": counts["Z"] if counts else None, "U": counts["U"] if counts else None}
    zu = f"Z {counts['Z']}  U {counts['U']}" if counts else "Z/U n/a (more than 2 bends)"
    _emit(args, payload, f"n {len(rep)}  k {rep.k}  {zu}  edges {g.edge_count()}  degeneracy {d}")
    return EXIT_OK


def cmd_clique(args) -> int:
    rep = _load(args.input)
    g = derive_graph(rep)
    if args.oracle:
        res, algo = max_clique_exact(g), "oracle"
    elif args.z_only:
        try:
            res, algo = max_clique_z_only(rep, g), "z-only"
        except NotZOnlyError as e:
            raise InputError(str(e)) from None
    else:
        try:
            res, algo = max_clique_b2(rep, g, budget=args.budget), "b2"
        except ValueError as e:
            raise InputError(str(e)) from None
    payload = {"algorithm": algo, "size": res.size, "members": list(res.members)}
    _emit(args, payload, f"size {res.size}\nmembers {' '.join(res.members)}")
    return EXIT_OK


def cmd_color(args) -> int:
    rep = _load(args.input)
    g = derive_graph(rep)
    res = greedy_color(g)
    omega = max_clique_exact(g).size
    bound = 2 * (rep.k + 1) * omega
    payload = {"assignment": res.assignment, "colors_used": res.colors_used, "degeneracy": res.degeneracy,
               "omega": omega, "bound": bound, "within_bound": res.colors_used <= bound}
    lines = [f"{v} {c}" for v, c in res.assignment.items()]
    lines.append(f"colors_used {res.colors_used}  degeneracy {res.degeneracy}")
    lines.append(f"omega {omega}  bound 2(k+1)*omega = {bound}  ratio colors/omega <= {2 * (rep.k + 1)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if res.colors_used <= bound else EXIT_MISMATCH


def _generate(args) -> EpgRepresentation:
    if args.family == "kmm":
        return gen_kn_minus_matching(args.m)
    if args.family == "c4":
        return gen_c4_projection_instance()
    cfg = GenConfig(n=args.n, k=args.k, rows=args.rows, cols=args.cols, seed=args.seed)
    return {"bk": gen_random_bk, "z": gen_random_z_only, "b2": gen_random_b2_mixed}[args.family](cfg)


def cmd_gen(args) -> int:
    try:
        rep = _generate(args)
    except (ValueError, GridTooSmallError) as e:
        raise InputError(str(e)) from None
    save_representation(rep, args.output)
    _emit(args, {"output": args.output, "n": len(rep), "k": rep.k}, f"wrote {len(rep)} paths to {args.output}")
    return EXIT_OK


def cmd_verify_bounds(args) -> int:
    rows = ["instance,n,k,E,omega,bound,pass"]
    records = []
    failures = 0
    for k in args.k:
        for i in range(args.count):
            seed = args.seed + i
            rep = gen_random_bk(GenConfig(n=args.n, k=k, rows=args.rows, cols=args.cols, seed=seed))
            g = derive_graph(rep)
            rep_ = edge_bound_check(rep, graph=g)
            sg = segment_graphs(rep)
            ok = rep_.passed and sg.edge_count >= rep_.edges and sg.omega == sg.q
            failures += not ok
            name = f"bk-k{k}-n{args.n}-seed{seed}"
            rows.append(f"{name},{rep_.n},{k},{rep_.edges},{rep_.omega},{rep_.bound},{int(ok)}")
            records.append({"instance": name, "n": rep_.n, "k": k, "E": rep_.edges, "omega": rep_.omega,
                            "bound": rep_.bound, "pass": ok, "segment_edges": sg.edge_count,
                            "segment_omega": sg.omega, "q": sg.q})
    csv_text = "\n".join(rows) + "\n"
    if args.output:
        Path(args.output).write_text(csv_text, encoding="utf-8")
    if args.json:
        print(json.dumps({"rows": records, "failures": failures}, sort_keys=True))
    else:
        sys.stdout.write(csv_text if not args.output else "")
        print(f"{len(records) - failures}/{len(records)} instances satisfy the edge bound and segment claims")
    return EXIT_OK if not failures else EXIT_MISMATCH


def cmd_cross_validate(args) -> int:
    k = 2
    configs = [GenConfig(n=1 + (i % args.n_max), k=k, rows=args.rows, cols=args.cols, seed=args.seed + i)
               for i in range(args.count)]
    report = cross_validate(configs, family=args.family, fixtures_dir=args.fixtures_dir)
    if args.output:
        Path(args.output).write_text(report.to_csv(), encoding="utf-8")
    if args.json:
        print(json.dumps({"total": len(report.rows), "mismatches": len(report.mismatches),
                          "rows": [r.__dict__ | {"agree": r.agree} for r in report.rows]}, sort_keys=True))
    else:
        print(report.summary())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_render(args) -> int:
    rep = _load(args.input)
    highlight = ()
    if args.highlight == "clique":
        highlight = max_clique_exact(derive_graph(rep)).members
    elif args.highlight:
        highlight = tuple(h for h in args.highlight.split(",") if h)
        unknown = set(highlight) - set(rep.ids)
        if unknown:
            raise InputError(f"unknown vertex ids in --highlight: {', '.join(sorted(unknown))}")
    svg = render_svg(rep, highlight)
    if args.output:
        Path(args.output).write_text(svg, encoding="utf-8")
        _emit(args, {"output": args.output, "highlight": list(highlight)}, f"wrote {args.output}")
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="epgclique", description="Maximum clique and colouring for EPG graphs with few bends.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text, with_input=True):
        sp = sub.add_parser(name, help=help_text)
        if with_input:
            sp.add_argument("input", help="representation file (JSON)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    add("stats", cmd_stats, "size, bend budget, Z/U counts, edges, degeneracy")
    sp = add("clique", cmd_clique, "maximum clique (B2 algorithm by default)")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--oracle", action="store_true", help="use the exact branch and bound")
    mode.add_argument("--z-only", action="store_true", help="use the Z-vertex algorithm (all paths must be Z)")
    sp.add_argument("--budget", type=float, default=None, help="abort after this many seconds")
    add("color", cmd_color, "greedy colouring with its 2(k+1)*omega certificate")

    sp = add("gen", cmd_gen, "write a generated representation", with_input=False)
    sp.add_argument("--family", choices=["bk", "z", "b2", "kmm", "c4"], default="bk")
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--m", type=int, default=6, help="vertex count for the kmm family")
    sp.add_argument("--rows", type=int, default=20)
    sp.add_argument("--cols", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output", required=True)

    sp = add("verify-bounds", cmd_verify_bounds, "edge bound and segment-graph claims over random instances",
             with_input=False)
    sp.add_argument("--k", type=int, nargs="+", default=[0, 1, 2, 3, 4])
    sp.add_argument("--n", type=int, default=30)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--rows", type=int, default=20)
    sp.add_argument("--cols", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output", help="CSV file (default: stdout)")

    sp = add("cross-validate", cmd_cross_validate, "structured algorithm against the exact oracle",
             with_input=False)
    sp.add_argument("--family", choices=["z", "b2"], default="b2")
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--rows", type=int, default=10)
    sp.add_argument("--cols", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--fixtures-dir", default="fixtures", help="where mismatching instances are written")
    sp.add_argument("-o", "--output", help="CSV report file")

    sp = add("render", cmd_render, "SVG drawing of a representation")
    sp.add_argument("-o", "--output", help="SVG file (default: stdout)")
    sp.add_argument("--highlight", help="'clique' or a comma-separated list of vertex ids")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"aborted: {e}", file=sys.stderr)
        return EXIT_BUDGET


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
