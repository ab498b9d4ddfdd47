"""Exact minimum edge guard sets by branch and bound (small instances only).

Faces are the universe of a set-cover problem; edge uv covers every face
with u or v on its boundary.  The search branches on the lowest uncovered
face, trying each covering edge in lexicographic order and excluding the
edges already tried at that node, so every edge set is reached at most once.
That makes optimum counting exact and the lexicographically smallest optimum
well defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .plane_graph import Edge, PlaneGraph

DEFAULT_EDGE_LIMIT = 40


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    minimum: int
    guards: tuple[Edge, ...]
    optimum_count: Optional[int]
    nodes: int


def _cover_masks(g: PlaneGraph) -> tuple[list[Edge], list[int], list[list[int]], int]:
    faces = g.face_vertex_lists()
    vmask = [0] * g.n
    for f, verts in enumerate(faces):
        bit = 1 << f
        for v in verts:
            vmask[v] |= bit
    edges = sorted(g.edge_list)
    emask = [vmask[u] | vmask[v] for u, v in edges]
    by_face = [[] for _ in faces]
    for i, mask in enumerate(emask):
        f = 0
        while mask:
            if mask & 1:
                by_face[f].append(i)
            mask >>= 1
            f += 1
    return edges, emask, by_face, (1 << len(faces)) - 1


def min_edge_guards(g: PlaneGraph, max_size: Optional[int] = None,
                    count_optima: bool = False,
                    edge_limit: Optional[int] = DEFAULT_EDGE_LIMIT) -> OracleResult:
    """Minimum edge guard set of ``g``.

    Raises :class:`OracleError` when ``g`` has more than ``edge_limit`` edges
    (pass ``edge_limit=None`` to override) or no guard set of size
    ``<= max_size`` exists.
    """
    if edge_limit is not None and g.m > edge_limit:
        raise OracleError(f"{g.m} edges exceed the oracle limit of {edge_limit}")
    edges, emask, by_face, full = _cover_masks(g)
    bound = len(edges) if max_size is None else max_size
    max_cover = max(bin(x).count("1") for x in emask)

    best = bound
    best_set: Optional[tuple[int, ...]] = None
    count = 0
    nodes = 0

    def search(covered: int, chosen: list[int], excluded: int) -> None:
        nonlocal best, best_set, count, nodes
        nodes += 1
        if covered == full:
            size = len(chosen)
            key = tuple(sorted(chosen))
            if best_set is None or size < best:
                best, best_set, count = size, key, 1
            elif size == best:
                count += 1
                if key < best_set:
                    best_set = key
            return
        left = full & ~covered
        need = -(-bin(left).count("1") // max_cover)
        if len(chosen) + max(need, 1) > best:
            return
        f = (left & -left).bit_length() - 1
        tried = excluded
        for e in by_face[f]:
            if tried >> e & 1:
                continue
            chosen.append(e)
            search(covered | emask[e], chosen, tried)
            chosen.pop()
            tried |= 1 << e
            if not count_optima and best_set is not None and len(chosen) + 1 > best:
                break

    search(0, [], 0)
    if best_set is None:
        raise OracleError(f"no edge guard set of size <= {bound}")
    return OracleResult(best, tuple(edges[i] for i in best_set),
                        count if count_optima else None, nodes)
