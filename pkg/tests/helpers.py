"""Small graph builders and brute-force references shared by the tests."""

from __future__ import annotations

from itertools import combinations

from edgeguard.plane_graph import PlaneGraph, build


def k4() -> PlaneGraph:
    """Triangle 0,1,2 with vertex 3 stacked inside."""
    return build(4, [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]], (0, 2))


def square() -> PlaneGraph:
    """The 4-cycle, the smallest quadrangulation."""
    return build(4, [[1, 3], [2, 0], [3, 1], [0, 2]], (0, 1))


def octahedron() -> PlaneGraph:
    """4-connected triangulation; not stacked (no degree-3 vertex)."""
    rot = [
        [1, 2, 3, 4], [0, 4, 5, 2], [0, 1, 5, 3],
        [0, 2, 5, 4], [0, 3, 5, 1], [1, 4, 3, 2],
    ]
    return build(6, rot, (0, 1))


def relabel(g: PlaneGraph, perm: list[int]) -> PlaneGraph:
    """The same embedding with vertex v renamed perm[v]."""
    rot = [None] * g.n
    for v in range(g.n):
        rot[perm[v]] = [perm[w] for w in g.rotations[v]]
    u, v = g.outer_pair
    return build(g.n, rot, (perm[u], perm[v]))


def brute_minimum(g: PlaneGraph) -> int:
    faces = [set(f) for f in g.face_vertex_lists()]
    edges = sorted(g.edge_list)
    for k in range(1, len(edges) + 1):
        for combo in combinations(edges, k):
            ends = {x for e in combo for x in e}
            if all(f & ends for f in faces):
                return k
    raise AssertionError("unreachable")
