"""Command-line front end.

Subcommands: gen, solve, verify, oracle, bench, render.  Exit status is 0 on
success, 1 when a verification fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time
from typing import Optional, Sequence

from .counters import OpCounter
from .generators import FAMILIES, GenSpec
from .graph_io import FormatError, parse_guards, parse_pg1, serialize_guards, serialize_pg1
from .oracle import OracleError, min_edge_guards
from .plane_graph import PlaneGraph, PlaneGraphError, classify, verify_guard_set
from .quad_guard import QuadGuardError, guard_quadrangulation
from .stacked_guard import StackedGuardError, guard_stacked


class UsageError(Exception):
    pass


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _family(name: str) -> str:
    name = name.replace("-", "_")
    if name not in FAMILIES:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    return name


def _bound(g: PlaneGraph, algo: str) -> int:
    return g.n // 3 if algo == "quad" else 2 * g.n // 7


def _pick_algo(g: PlaneGraph, algo: str) -> tuple[str, object]:
    if algo != "auto":
        return algo, None
    c = classify(g)
    if c.is_quadrangulation:
        return "quad", None
    if c.is_stacked:
        return "stacked", c.stacking_tree
    raise UsageError("graph is neither a quadrangulation nor a stacked triangulation")


def _solve(g: PlaneGraph, algo: str, counter: Optional[OpCounter] = None):
    algo, tree = _pick_algo(g, algo)
    if algo == "quad":
        return algo, guard_quadrangulation(g, counter), None
    guards, ledger = guard_stacked(g, counter, tree=tree)
    return algo, guards, ledger


# -- subcommands ------------------------------------------------------------

def cmd_gen(args) -> int:
    spec = GenSpec(_family(args.family), args.size, args.seed)
    sys.stdout.write(serialize_pg1(spec.generate()))
    return 0


def cmd_solve(args) -> int:
    g = parse_pg1(_read(args.graph))
    algo, guards, ledger = _solve(g, args.algo)
    sys.stdout.write(serialize_guards(guards))
    if args.trace:
        if ledger is None:
            print(f"quad n={g.n} guards={len(guards)} bound={_bound(g, algo)}",
                  file=sys.stderr)
        else:
            for e in ledger:
                note = f" {e.note}" if e.note else ""
                print(f"{e.case} k={e.k} l={e.l}{note}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    g = parse_pg1(_read(args.graph))
    guards = parse_guards(_read(args.guards))
    try:
        rep = verify_guard_set(g, guards)
    except PlaneGraphError as exc:
        print(f"invalid: {exc}")
        return 1
    if rep.valid:
        print(f"valid: {len(guards)} guards")
        return 0
    faces = " ".join(map(str, rep.unguarded_faces))
    print(f"invalid: unguarded faces {faces}")
    return 1


def cmd_oracle(args) -> int:
    g = parse_pg1(_read(args.graph))
    limit = None if args.no_limit else args.edge_limit
    res = min_edge_guards(g, args.max_size, args.count, limit)
    print(f"minimum {res.minimum}")
    if args.count:
        print(f"optima {res.optimum_count}")
    sys.stdout.write(serialize_guards(res.guards))
    return 0


def cmd_bench(args) -> int:
    family = _family(args.family)
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        raise UsageError("--sizes must be comma-separated integers") from None
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "guards", "bound", "micros", "ops"])
    for size in sizes:
        g = GenSpec(family, size, args.seed).generate()
        counter = OpCounter()
        t0 = time.perf_counter()
        algo, guards, _ = _solve(g, "auto", counter)
        micros = round((time.perf_counter() - t0) * 1e6)
        w.writerow([g.n, len(guards), _bound(g, algo), micros, counter.total])
    sys.stdout.write(out.getvalue())
    return 0


def _layout(g: PlaneGraph) -> list[tuple[float, float]]:
    """Outer face on a circle, other vertices on an inner circle."""
    outer = list(g.face_vertices(g.outer_face))
    rest = [v for v in range(g.n) if v not in set(outer)]
    pos = [(0.0, 0.0)] * g.n
    for ring, radius in ((outer, 1.0), (rest, 0.6)):
        k = len(ring)
        for i, v in enumerate(ring):
            a = 2 * math.pi * i / max(k, 1) - math.pi / 2
            pos[v] = (radius * math.cos(a), radius * math.sin(a))
    return pos


def render_dot(g: PlaneGraph, guards=()) -> str:
    hot = set(guards)
    lines = ["graph G {", "  node [shape=circle];"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.edge_list:
        style = ' [color=red, penwidth=3]' if (u, v) in hot else ""
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_svg(g: PlaneGraph, guards=()) -> str:
    hot = set(guards)
    size, pad = 400, 30
    scale = (size - 2 * pad) / 2

    pos = _layout(g)

    def xy(v):
        x, y = pos[v]
        return pad + (x + 1) * scale, pad + (y + 1) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
           f'height="{size}" viewBox="0 0 {size} {size}">']
    for u, v in g.edge_list:
        (x1, y1), (x2, y2) = xy(u), xy(v)
        colour, width = ("red", 3) if (u, v) in hot else ("black", 1)
        out.append(f'  <line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                   f'stroke="{colour}" stroke-width="{width}"/>')
    for v in range(g.n):
        x, y = xy(v)
        out.append(f'  <circle cx="{x:.2f}" cy="{y:.2f}" r="9" fill="white" stroke="black"/>')
        out.append(f'  <text x="{x:.2f}" y="{y + 4:.2f}" font-size="10" '
                   f'text-anchor="middle">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(args) -> int:
    g = parse_pg1(_read(args.graph))
    guards = parse_guards(_read(args.guards)) if args.guards else []
    render = render_dot if args.format == "dot" else render_svg
    sys.stdout.write(render(g, guards))
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edgeguard", description="Edge guards for plane graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="generate an instance as PG1")
    s.add_argument("--family", required=True, help=", ".join(FAMILIES))
    s.add_argument("--size", "--n", "--k", dest="size", type=int, required=True,
                   help="k for qk/stacked_lower, n for random families")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="compute an edge guard set")
    s.add_argument("graph", nargs="?", help="PG1 file (default: stdin)")
    s.add_argument("--algo", choices=("auto", "quad", "stacked"), default="auto")
    s.add_argument("--trace", action="store_true", help="write the ledger to stderr")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check a guard set")
    s.add_argument("graph")
    s.add_argument("guards")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="exact minimum by branch and bound")
    s.add_argument("graph", nargs="?")
    s.add_argument("--max-size", type=int)
    s.add_argument("--count", action="store_true", help="count optimal sets")
    s.add_argument("--edge-limit", type=int, default=40)
    s.add_argument("--no-limit", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("bench", help="time a solver over sizes (CSV)")
    s.add_argument("--family", required=True)
    s.add_argument("--sizes", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("render", help="draw a graph with guards highlighted")
    s.add_argument("--format", choices=("dot", "svg"), default="dot")
    s.add_argument("graph")
    s.add_argument("guards", nargs="?")
    s.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError, OracleError,
            QuadGuardError, StackedGuardError, PlaneGraphError) as exc:
        print(f"edgeguard: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
