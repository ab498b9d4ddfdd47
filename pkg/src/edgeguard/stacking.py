"""Stacking trees of stacked triangulations (planar 3-trees).

Node 0 is the root and carries the outer triangle.  Every internal node holds
the vertex ``v`` stacked into its triangle ``(x, y, z)`` and has the children
``(v, x, y)``, ``(v, y, z)``, ``(v, z, x)`` in that order.  Triangles are
stored as face traversals (inner side), so the child triples are again
traversals of faces after stacking.  Node ids follow a preorder walk.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from .plane_graph import PlaneGraph, RotationBuilder, is_triangulation

Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class StackingTree:
    triangle: tuple[Triangle, ...]
    vertex: tuple[int, ...]          # -1 for leaves
    children: tuple[Optional[tuple[int, int, int]], ...]
    parent: tuple[int, ...]          # -1 for the root
    interior: tuple[int, ...]
    height: tuple[int, ...]

    @property
    def root(self) -> int:
        return 0

    @property
    def size(self) -> int:
        return len(self.triangle)

    @property
    def root_triangle(self) -> Triangle:
        return self.triangle[0]

    def is_leaf(self, node: int) -> bool:
        return self.children[node] is None

    def leaves(self, node: int = 0) -> list[int]:
        out = []
        stack = [node]
        while stack:
            x = stack.pop()
            ch = self.children[x]
            if ch is None:
                out.append(x)
            else:
                stack.extend(reversed(ch))
        return out

    def interior_vertices(self, node: int = 0) -> list[int]:
        out = []
        stack = [node]
        while stack:
            x = stack.pop()
            ch = self.children[x]
            if ch is not None:
                out.append(self.vertex[x])
                stack.extend(reversed(ch))
        return out

    def to_graph(self) -> tuple[PlaneGraph, list[int]]:
        """Realise the tree as a plane graph.

        Returns the graph and the list mapping graph vertex ids to the
        labels used in the tree (labels are relabelled in increasing order).
        """
        return realize(self.triangle, self.vertex, self.children)


def _from_nested(tri_root, stack_into):
    """Assemble a canonical StackingTree.

    ``stack_into`` maps a node key to its stacked vertex; node keys are
    triangles, and children are generated in canonical order.
    """
    triangle, vertex, children, parent = [], [], [], []
    work = [(tri_root, -1)]
    order = []
    while work:
        tri, par = work.pop()
        nid = len(triangle)
        triangle.append(tri)
        parent.append(par)
        v = stack_into.get(frozenset(tri), -1)
        vertex.append(v)
        children.append(None)
        order.append(nid)
        if par >= 0:
            ch = children[par]
            children[par] = (ch or ()) + (nid,)
        if v >= 0:
            x, y, z = tri
            # preorder: push in reverse so (v,x,y) is visited first
            work.append(((v, z, x), nid))
            work.append(((v, y, z), nid))
            work.append(((v, x, y), nid))
    n_nodes = len(triangle)
    interior = [0] * n_nodes
    height = [0] * n_nodes
    for nid in reversed(order):
        ch = children[nid]
        if ch is not None:
            interior[nid] = 1 + sum(interior[c] for c in ch)
            height[nid] = 1 + max(height[c] for c in ch)
    return StackingTree(
        tuple(triangle), tuple(vertex), tuple(children), tuple(parent),
        tuple(interior), tuple(height),
    )


def stacking_tree(g: PlaneGraph) -> Optional[StackingTree]:
    """Recognise a stacked triangulation and return its stacking tree.

    Non-outer vertices of degree 3 are peeled off (lowest id first) until
    only the outer triangle remains; returns ``None`` if that gets stuck.
    """
    if not is_triangulation(g):
        return None
    outer = g.face_vertices(g.outer_face)
    u, v, w = outer
    root = (u, w, v)
    n = g.n
    if n == 3:
        return _from_nested(root, {})

    is_outer = [False] * n
    for x in outer:
        is_outer[x] = True
    deg = [len(r) for r in g.rotations]
    alive = [True] * n
    heap = [x for x in range(n) if deg[x] == 3 and not is_outer[x]]
    heapq.heapify(heap)
    stack_into = {}
    removed = 0
    rots = g.rotations
    while heap:
        x = heapq.heappop(heap)
        if not alive[x] or deg[x] != 3:
            continue
        nb = [y for y in rots[x] if alive[y]]
        alive[x] = False
        removed += 1
        stack_into[frozenset(nb)] = x
        for y in nb:
            deg[y] -= 1
            if deg[y] == 3 and not is_outer[y]:
                heapq.heappush(heap, y)
    if removed != n - 3:
        return None
    tree = _from_nested(root, stack_into)
    if tree.interior[0] != n - 3:
        return None
    return tree


def realize(triangle, vertex, children, root: int = 0) -> tuple[PlaneGraph, list[int]]:
    """Build the plane graph of the subtree at ``root``.

    Works on any arrays shaped like a StackingTree (the solver keeps mutable
    copies).  Returns the graph and the label of every graph vertex.
    """
    x, y, z = triangle[root]
    labels = set((x, y, z))
    stack = [root]
    while stack:
        nd = stack.pop()
        ch = children[nd]
        if ch is not None:
            labels.add(vertex[nd])
            stack.extend(ch)
    order = sorted(labels)
    idx = {lab: i for i, lab in enumerate(order)}
    b = RotationBuilder(0)
    for _ in order:
        b.add_vertex()
    # inner traversal (x, y, z): rotation at y has z just before x
    b.set_rotation(idx[x], [idx[y], idx[z]])
    b.set_rotation(idx[y], [idx[z], idx[x]])
    b.set_rotation(idx[z], [idx[x], idx[y]])
    stack = [root]
    while stack:
        nd = stack.pop()
        ch = children[nd]
        if ch is None:
            continue
        face = [idx[t] for t in triangle[nd]]
        w = idx[vertex[nd]]
        # insert_vertex allocates; reuse the preallocated slot instead
        for i in range(3):
            b.insert_after(face[i], face[(i + 1) % 3], w)
        b.set_rotation(w, face)
        stack.extend(ch)
    g = b.build((idx[x], idx[z]))
    return g, order
