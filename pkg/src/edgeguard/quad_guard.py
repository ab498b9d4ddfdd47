"""floor(n/3) edge guards for quadrangulations via a guard coloring.

Pipeline: Euler orientation of the 4-regular dual, a 2-factor from a perfect
matching of the out/in bipartite double, a parity 2-coloring that flips
exactly across 2-factor edges, and finally the three-candidate conversion of
a guard coloring into at most floor(n/3) edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .counters import OpCounter
from .plane_graph import DualGraph, Edge, PlaneGraph, build_dual, is_quadrangulation


class QuadGuardError(ValueError):
    pass


class ColoringConsistencyError(QuadGuardError):
    """Parity flips disagree on a non-tree edge: H is not a 2-factor."""


@dataclass(frozen=True, eq=False)
class Orientation:
    tail: np.ndarray   # per dual edge, the face it leaves
    head: np.ndarray

    def out_degrees(self, num_faces: int) -> np.ndarray:
        return np.bincount(self.tail, minlength=num_faces)

    def in_degrees(self, num_faces: int) -> np.ndarray:
        return np.bincount(self.head, minlength=num_faces)


@dataclass(frozen=True, eq=False)
class TwoFactor:
    mask: np.ndarray   # bool per dual edge

    @property
    def edges(self) -> list[int]:
        return np.nonzero(self.mask)[0].tolist()

    def degrees(self, dual: DualGraph) -> np.ndarray:
        ends = dual.endpoints[self.mask]
        return np.bincount(ends.ravel(), minlength=dual.num_faces)


@dataclass(frozen=True, eq=False)
class GuardColoring:
    colors: np.ndarray   # 0/1 per vertex


@dataclass(frozen=True)
class ColoringReport:
    valid: bool
    missing_color: tuple[int, ...]
    no_monochromatic: tuple[int, ...]


def _incidence(dual: DualGraph) -> list[list[int]]:
    """Dual edges at each face, ascending edge id; a loop appears twice."""
    m = dual.m
    faces = dual.endpoints.T.ravel()
    eids = np.concatenate([np.arange(m), np.arange(m)])
    order = np.lexsort((eids, faces))
    counts = np.bincount(faces, minlength=dual.num_faces)
    flat = eids[order].tolist()
    out, pos = [], 0
    for c in counts.tolist():
        out.append(flat[pos:pos + c])
        pos += c
    return out


def euler_orient(dual: DualGraph, counter: Optional[OpCounter] = None) -> Orientation:
    """Orient every dual edge along an Eulerian circuit (Hierholzer).

    Starts at face 0 and always leaves along the lowest-id unused edge.
    """
    deg = dual.degrees()
    if dual.num_faces == 0 or (deg != 4).any():
        raise QuadGuardError("dual graph is not 4-regular")
    ends = dual.endpoints.tolist()
    if any(a == b for a, b in ends):
        raise QuadGuardError("dual graph has a loop")
    inc = _incidence(dual)
    m = dual.m
    used = [False] * m
    tail = [-1] * m
    ptr = [0] * dual.num_faces
    stack = [0]
    steps = 0
    while stack:
        v = stack[-1]
        row = inc[v]
        p = ptr[v]
        while p < 4 and used[row[p]]:
            p += 1
        ptr[v] = p
        steps += 1
        if p == 4:
            stack.pop()
            continue
        e = row[p]
        used[e] = True
        a, b = ends[e]
        tail[e] = v
        stack.append(b if a == v else a)
    if counter is not None:
        counter.add("euler_steps", steps)
    if not all(used):
        raise QuadGuardError("dual graph is disconnected")
    tail_arr = np.array(tail, dtype=np.int64)
    e = dual.endpoints
    head_arr = np.where(e[:, 0] == tail_arr, e[:, 1], e[:, 0])
    return Orientation(tail_arr, head_arr)


def two_factor(dual: DualGraph, orient: Orientation,
               counter: Optional[OpCounter] = None) -> TwoFactor:
    """2-factor from a perfect matching of the out/in double of the dual.

    The double has an out-copy and an in-copy of every face and one edge per
    directed dual edge, so it is 2-regular.  Each of its even cycles is walked
    from its lowest-id edge and every other edge is taken.
    """
    nf = dual.num_faces
    if (orient.out_degrees(nf) != 2).any() or (orient.in_degrees(nf) != 2).any():
        raise QuadGuardError("orientation is not 2-in/2-out")
    tail = orient.tail.tolist()
    head = orient.head.tolist()
    outs = [[] for _ in range(nf)]
    ins = [[] for _ in range(nf)]
    for e in range(dual.m):
        outs[tail[e]].append(e)
        ins[head[e]].append(e)
    m = dual.m
    seen = [False] * m
    chosen = [False] * m
    steps = 0
    for e0 in range(m):
        if seen[e0]:
            continue
        e, take, at_head = e0, True, True
        while True:
            seen[e] = True
            chosen[e] = take
            steps += 1
            a, b = ins[head[e]] if at_head else outs[tail[e]]
            e = b if a == e else a
            take = not take
            at_head = not at_head
            if e == e0:
                break
        if not take:
            raise QuadGuardError("odd cycle in the bipartite double")
    if counter is not None:
        counter.add("matching_steps", steps)
    return TwoFactor(np.array(chosen, dtype=bool))


def parity_coloring(g: PlaneGraph, h: TwoFactor,
                    counter: Optional[OpCounter] = None) -> GuardColoring:
    """BFS 2-coloring that flips colour exactly across edges whose dual is in H."""
    in_h = h.mask.tolist()
    head = g.head.tolist()
    edge_of = g.edge_of.tolist()
    offset = g.offset.tolist()
    color = [-1] * g.n
    color[0] = 0
    queue = [0]
    steps = 0
    for v in queue:
        cv = color[v]
        for d in range(offset[v], offset[v + 1]):
            w = head[d]
            want = cv ^ in_h[edge_of[d]]
            cw = color[w]
            if cw < 0:
                color[w] = want
                queue.append(w)
            elif cw != want:
                raise ColoringConsistencyError(
                    f"edge {v}-{w}: parity flip inconsistent with the 2-factor")
        steps += offset[v + 1] - offset[v]
    if counter is not None:
        counter.add("coloring_steps", steps)
    return GuardColoring(np.array(color, dtype=np.int64))


def validate_guard_coloring(g: PlaneGraph, c: GuardColoring) -> ColoringReport:
    col = np.asarray(c.colors)
    nf = g.num_faces
    deg = g.face_degrees()
    ones = np.bincount(g.face_of, weights=col[g.tail], minlength=nf)
    mono = np.bincount(g.face_of, weights=(col[g.tail] == col[g.head]), minlength=nf)
    missing = np.nonzero((ones == 0) | (ones == deg))[0]
    no_mono = np.nonzero(mono == 0)[0]
    return ColoringReport(not len(missing) and not len(no_mono),
                          tuple(missing.tolist()), tuple(no_mono.tolist()))


def monochromatic_counts(g: PlaneGraph, c: GuardColoring) -> np.ndarray:
    col = np.asarray(c.colors)
    mono = col[g.tail] == col[g.head]
    return np.bincount(g.face_of, weights=mono, minlength=g.num_faces).astype(np.int64)


@dataclass(frozen=True)
class GuardCandidates:
    cover_a: list[Edge]
    cover_b: list[Edge]
    matching: list[Edge]

    @property
    def sizes(self) -> tuple[int, int, int]:
        return len(self.cover_a), len(self.cover_b), len(self.matching)

    def best(self) -> list[Edge]:
        return min((self.cover_a, self.cover_b, self.matching), key=len)


def guard_candidates(g: PlaneGraph, c: GuardColoring,
                     counter: Optional[OpCounter] = None) -> GuardCandidates:
    """The three guard sets built from a guard coloring.

    With colour classes A, B and greedy maximal matchings F_A, F_B of the
    monochromatic edges, the candidates are F_A plus a patch edge per
    A-vertex missed by F_A, the same for B, and F_A + F_B.  Their sizes sum
    to n, so the smallest has at most floor(n/3) edges.
    """
    rep = validate_guard_coloring(g, c)
    if not rep.valid:
        raise QuadGuardError("not a guard coloring")
    col = np.asarray(c.colors).tolist()
    edges = g.edge_list
    covered = [False] * g.n
    match = ([], [])
    for u, v in edges:
        cu = col[u]
        if cu == col[v] and not covered[u] and not covered[v]:
            covered[u] = covered[v] = True
            match[cu].append((u, v))
    lowest = np.minimum.reduceat(g.edge_of, g.offset[:-1]).tolist()
    patch = ([], [])
    for v in range(g.n):
        if not covered[v]:
            patch[col[v]].append(edges[lowest[v]])
    if counter is not None:
        counter.add("conversion_steps", len(edges) + g.n)
    return GuardCandidates(
        match[0] + patch[0], match[1] + patch[1], match[0] + match[1])


def coloring_to_guards(g: PlaneGraph, c: GuardColoring,
                       counter: Optional[OpCounter] = None) -> list[Edge]:
    return sorted(guard_candidates(g, c, counter).best())


@dataclass(frozen=True, eq=False)
class QuadRun:
    dual: DualGraph
    orientation: Orientation
    two_factor: TwoFactor
    coloring: GuardColoring
    guards: list[Edge]


def quad_pipeline(g: PlaneGraph, counter: Optional[OpCounter] = None) -> QuadRun:
    if not is_quadrangulation(g):
        raise QuadGuardError("input is not a quadrangulation")
    dual = build_dual(g)
    if counter is not None:
        counter.add("dual_edges", dual.m)
    orient = euler_orient(dual, counter)
    h = two_factor(dual, orient, counter)
    col = parity_coloring(g, h, counter)
    guards = coloring_to_guards(g, col, counter)
    return QuadRun(dual, orient, h, col, guards)


def guard_quadrangulation(g: PlaneGraph, counter: Optional[OpCounter] = None) -> list[Edge]:
    """Edge guard set of size at most floor(n/3) for a quadrangulation."""
    return quad_pipeline(g, counter).guards
