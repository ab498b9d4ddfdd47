"""PG1 and GUARDS text formats.

PG1::

    PG1 <n> <m>
    <deg_0> <clockwise neighbours of vertex 0>
    ...
    <deg_{n-1}> <clockwise neighbours of vertex n-1>
    OUTER <u> <v>

GUARDS::

    GUARDS <g>
    <u> <v>          # u < v, lines sorted, no duplicates

Serialisation writes rotations as stored (starting at the smallest
neighbour), single spaces, and a trailing newline, so output is canonical.
"""

from __future__ import annotations

from typing import Iterable

from .plane_graph import Edge, PlaneGraph, PlaneGraphError, build, edge_key


class FormatError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


def _lines(text: str) -> list[tuple[int, list[tuple[int, str]]]]:
    """Non-blank lines as (line number, [(column, token), ...])."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        toks = []
        col = 0
        for tok in raw.split():
            col = raw.index(tok, col)
            toks.append((col + 1, tok))
            col += len(tok)
        if toks:
            out.append((i, toks))
    return out


def _int(tok: tuple[int, str], line: int) -> int:
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise FormatError(f"expected an integer, got {s!r}", line, col) from None


def serialize_pg1(g: PlaneGraph) -> str:
    out = [f"PG1 {g.n} {g.m}"]
    for r in g.rotations:
        out.append(" ".join(map(str, (len(r), *r))))
    u, v = g.outer_pair
    out.append(f"OUTER {u} {v}")
    return "\n".join(out) + "\n"


def parse_pg1(text: str) -> PlaneGraph:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty document", 1)
    ln, toks = lines[0]
    if toks[0][1] != "PG1" or len(toks) != 3:
        raise FormatError("header must be 'PG1 <n> <m>'", ln, toks[0][0])
    n = _int(toks[1], ln)
    m = _int(toks[2], ln)
    if n < 1:
        raise FormatError("n must be positive", ln, toks[1][0])
    if len(lines) != n + 2:
        last = lines[-1][0]
        raise FormatError(f"expected {n} vertex lines and an OUTER line, "
                          f"found {len(lines) - 1} lines", last)
    rotations = []
    total = 0
    for i in range(n):
        ln, toks = lines[1 + i]
        deg = _int(toks[0], ln)
        if deg != len(toks) - 1:
            raise FormatError(f"vertex {i}: degree {deg} but {len(toks) - 1} "
                              "neighbours listed", ln, toks[0][0])
        nbrs = []
        for tok in toks[1:]:
            v = _int(tok, ln)
            if not 0 <= v < n:
                raise FormatError(f"vertex id {v} out of range", ln, tok[0])
            nbrs.append(v)
        rotations.append(nbrs)
        total += deg
    if total != 2 * m:
        raise FormatError(f"degree sum {total} does not match m = {m}", lines[0][0])
    ln, toks = lines[-1]
    if toks[0][1] != "OUTER" or len(toks) != 3:
        raise FormatError("last line must be 'OUTER <u> <v>'", ln, toks[0][0])
    u, v = _int(toks[1], ln), _int(toks[2], ln)
    for tok, x in ((toks[1], u), (toks[2], v)):
        if not 0 <= x < n:
            raise FormatError(f"vertex id {x} out of range", ln, tok[0])
    if v not in rotations[u]:
        raise FormatError(f"OUTER pair ({u}, {v}) is not an edge", ln, toks[1][0])
    try:
        return build(n, rotations, (u, v))
    except PlaneGraphError as exc:
        raise FormatError(str(exc), lines[0][0]) from None


def serialize_guards(guards: Iterable[Edge]) -> str:
    edges = sorted({edge_key(u, v) for u, v in guards})
    out = [f"GUARDS {len(edges)}"]
    out += [f"{u} {v}" for u, v in edges]
    return "\n".join(out) + "\n"


def parse_guards(text: str) -> list[Edge]:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty document", 1)
    ln, toks = lines[0]
    if toks[0][1] != "GUARDS" or len(toks) != 2:
        raise FormatError("header must be 'GUARDS <g>'", ln, toks[0][0])
    count = _int(toks[1], ln)
    if len(lines) - 1 != count:
        raise FormatError(f"header announces {count} guards, found {len(lines) - 1}", ln)
    edges = []
    for ln, toks in lines[1:]:
        if len(toks) != 2:
            raise FormatError("guard line must be '<u> <v>'", ln, toks[0][0])
        u, v = _int(toks[0], ln), _int(toks[1], ln)
        if u >= v:
            raise FormatError("guard endpoints must satisfy u < v", ln, toks[0][0])
        if u < 0:
            raise FormatError(f"vertex id {u} out of range", ln, toks[0][0])
        if edges and (u, v) <= edges[-1]:
            raise FormatError("guard lines must be sorted and distinct", ln, toks[0][0])
        edges.append((u, v))
    return edges
