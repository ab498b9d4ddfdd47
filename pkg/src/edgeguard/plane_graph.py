"""Plane graphs stored as rotation systems.

A plane graph is given by, for every vertex, the clockwise cyclic order of
its neighbours together with one dart (directed half-edge) that lies on the
outer face.  Everything else (faces, dual, classification) is derived.

Dart layout
-----------
Rotation lists are normalised to start at the smallest neighbour id.  Darts
are numbered vertex by vertex in rotation order, so the dart ``u -> rot[u][i]``
has id ``offset[u] + i``.  Faces are traced with the rule::

    next_in_face(d) = rotation predecessor of twin(d)

and face ids are assigned in order of the smallest dart they contain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

Edge = tuple[int, int]


class PlaneGraphError(ValueError):
    """Raised for rotation systems that do not describe a valid plane graph."""


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[int, ...]
    vertices: tuple[int, ...]
    is_outer: bool = False

    @property
    def degree(self) -> int:
        return len(self.darts)


class PlaneGraph:
    """Immutable, validated plane graph.  Use :func:`build` to construct.

    Dart-indexed numpy arrays: ``tail``, ``head``, ``twin``, ``face_next``,
    ``face_of``, ``edge_of``.  Faces are stored in CSR form: the darts of face
    ``f`` in traversal order (starting at its smallest dart) are
    ``face_seq[face_ptr[f]:face_ptr[f + 1]]``.
    """

    __slots__ = (
        "n", "rotations", "offset", "tail", "head", "twin", "face_next",
        "face_of", "face_ptr", "face_seq", "outer_dart", "edge_of", "edges",
        "_edge_index", "_faces", "_adj", "_edge_list",
    )

    def __init__(self, n, rotations, outer_dart, offset, tail, head, twin):
        self.n = n
        self.rotations = rotations
        self.outer_dart = int(outer_dart)
        self.offset = offset
        self.tail = tail
        self.head = head
        self.twin = twin
        nd = len(head)
        deg = np.diff(offset)

        tt = tail[twin]
        self.face_next = offset[tt] + (twin - offset[tt] - 1) % deg[tt]
        self.face_of, self.face_ptr, self.face_seq = _trace(self.face_next)

        forward = tail < head
        eid = np.cumsum(forward) - 1
        self.edge_of = np.where(forward, eid, eid[twin]) if nd else eid
        self.edges = np.stack([tail[forward], head[forward]], axis=1)
        self._edge_index = None
        self._edge_list = None
        self._faces = None
        self._adj = None

    # -- basic queries ----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        return len(self.face_ptr) - 1

    @property
    def outer_face(self) -> int:
        return int(self.face_of[self.outer_dart])

    @property
    def outer_pair(self) -> Edge:
        d = self.outer_dart
        return (int(self.tail[d]), int(self.head[d]))

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    def dart(self, u: int, v: int) -> int:
        """Id of the dart u -> v."""
        try:
            return int(self.offset[u]) + self.rotations[u].index(v)
        except ValueError:
            raise KeyError(f"{u}-{v} is not an edge") from None

    @property
    def edge_list(self) -> list[Edge]:
        if self._edge_list is None:
            self._edge_list = [tuple(e) for e in self.edges.tolist()]
        return self._edge_list

    @property
    def edge_index(self) -> dict[Edge, int]:
        if self._edge_index is None:
            self._edge_index = {e: i for i, e in enumerate(self.edge_list)}
        return self._edge_index

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edge_index

    def adjacency(self) -> list[frozenset[int]]:
        if self._adj is None:
            self._adj = [frozenset(r) for r in self.rotations]
        return self._adj

    def face_darts(self, f: int) -> tuple[int, ...]:
        return tuple(self.face_seq[self.face_ptr[f]:self.face_ptr[f + 1]].tolist())

    def face_vertices(self, f: int) -> tuple[int, ...]:
        ds = self.face_seq[self.face_ptr[f]:self.face_ptr[f + 1]]
        return tuple(self.tail[ds].tolist())

    def face_degrees(self) -> np.ndarray:
        return np.diff(self.face_ptr)

    def face_vertex_lists(self) -> list[list[int]]:
        verts = self.tail[self.face_seq].tolist()
        ptr = self.face_ptr.tolist()
        return [verts[ptr[f]:ptr[f + 1]] for f in range(len(ptr) - 1)]

    @property
    def faces(self) -> list[Face]:
        if self._faces is None:
            outer = self.outer_face
            seq = self.face_seq.tolist()
            verts = self.tail[self.face_seq].tolist()
            ptr = self.face_ptr.tolist()
            self._faces = [
                Face(f, tuple(seq[ptr[f]:ptr[f + 1]]),
                     tuple(verts[ptr[f]:ptr[f + 1]]), f == outer)
                for f in range(len(ptr) - 1)
            ]
        return self._faces

    def __eq__(self, other):
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return (self.n == other.n and self.rotations == other.rotations
                and self.outer_dart == other.outer_dart)

    def __hash__(self):
        return hash((self.n, self.rotations, self.outer_dart))

    def __repr__(self):
        return f"PlaneGraph(n={self.n}, m={self.m}, f={self.num_faces})"


def _trace(face_next: np.ndarray):
    """Split the face permutation into cycles.

    Faces are numbered by their smallest dart; within a face darts are listed
    in traversal order from that dart (list ranking by pointer jumping).
    """
    nd = len(face_next)
    if nd == 0:
        z = np.zeros(0, dtype=np.int64)
        return z, np.zeros(1, dtype=np.int64), z
    idx = np.arange(nd)
    adj = csr_matrix((np.ones(nd, dtype=np.int8), (idx, face_next)), shape=(nd, nd))
    nf, labels = connected_components(adj, directed=True, connection="weak")
    first = np.full(nf, nd, dtype=np.int64)
    np.minimum.at(first, labels, idx)
    relabel = np.empty(nf, dtype=np.int64)
    relabel[np.argsort(first, kind="stable")] = np.arange(nf)
    face_of = relabel[labels]
    start = np.sort(first)

    # distance from each dart to the end of its face's chain
    nxt = face_next.copy()
    is_last = face_next == start[face_of]
    nxt[is_last] = idx[is_last]
    rank = np.where(is_last, 0, 1).astype(np.int64)
    while True:
        nn = nxt[nxt]
        if np.array_equal(nn, nxt):
            break
        rank = rank + rank[nxt]
        nxt = nn
    sizes = np.bincount(face_of, minlength=nf)
    ptr = np.zeros(nf + 1, dtype=np.int64)
    np.cumsum(sizes, out=ptr[1:])
    pos = sizes[face_of] - 1 - rank
    seq = np.empty(nd, dtype=np.int64)
    seq[ptr[face_of] + pos] = idx
    return face_of, ptr, seq


def build(n: int, rotations: Sequence[Sequence[int]], outer: Edge) -> PlaneGraph:
    """Validate a clockwise rotation system and return a :class:`PlaneGraph`.

    ``outer`` is the ordered pair (u, v); the face traced from dart u -> v
    becomes the outer face.
    """
    if n < 2:
        raise PlaneGraphError("graph needs at least two vertices")
    if len(rotations) != n:
        raise PlaneGraphError(f"expected {n} rotation lists, got {len(rotations)}")

    deg = np.fromiter((len(r) for r in rotations), dtype=np.int64, count=n)
    if (deg == 0).any():
        raise PlaneGraphError("graph is disconnected")
    offset = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=offset[1:])
    nd = int(offset[n])
    flat = np.fromiter(chain.from_iterable(rotations), dtype=np.int64, count=nd)
    tail = np.repeat(np.arange(n, dtype=np.int64), deg)

    bad = np.nonzero((flat < 0) | (flat >= n))[0]
    if len(bad):
        d = bad[0]
        raise PlaneGraphError(f"vertex {tail[d]}: neighbour {flat[d]} out of range")
    bad = np.nonzero(flat == tail)[0]
    if len(bad):
        raise PlaneGraphError(f"vertex {tail[bad[0]]}: loop")
    key = tail * n + flat
    skey = np.sort(key)
    dup = np.nonzero(skey[1:] == skey[:-1])[0]
    if len(dup):
        raise PlaneGraphError(f"vertex {skey[dup[0]] // n}: parallel edges")

    # rotate each list to start at its smallest neighbour
    seg = offset[:-1]
    segmin = np.minimum.reduceat(flat, seg)
    pos_in = np.arange(nd) - seg[tail]
    shift = np.zeros(n, dtype=np.int64)
    hit = np.nonzero(flat == segmin[tail])[0]
    shift[tail[hit]] = pos_in[hit]
    head = flat[seg[tail] + (pos_in + shift[tail]) % deg[tail]]

    key = tail * n + head
    order = np.argsort(key, kind="stable")
    skey = key[order]
    tkey = head * n + tail
    at = np.searchsorted(skey, tkey)
    at[at >= nd] = 0
    missing = np.nonzero(skey[at] != tkey)[0]
    if len(missing):
        d = missing[0]
        raise PlaneGraphError(
            f"inconsistent rotations: {tail[d]} lists {head[d]} but "
            f"{head[d]} omits {tail[d]}")
    twin = order[at]

    adj = csr_matrix((np.ones(nd, dtype=np.int8), (tail, head)), shape=(n, n))
    ncomp, _ = connected_components(adj, directed=False)
    if ncomp != 1:
        raise PlaneGraphError("graph is disconnected")

    ou, ov = outer
    if not (0 <= ou < n and 0 <= ov < n):
        raise PlaneGraphError(f"outer pair ({ou}, {ov}) is not an edge")
    lo, hi = int(offset[ou]), int(offset[ou + 1])
    where = np.nonzero(head[lo:hi] == ov)[0]
    if not len(where):
        raise PlaneGraphError(f"outer pair ({ou}, {ov}) is not an edge")
    outer_dart = lo + int(where[0])

    hl = head.tolist()
    ol = offset.tolist()
    rots = tuple(tuple(hl[ol[u]:ol[u + 1]]) for u in range(n))
    g = PlaneGraph(n, rots, outer_dart, offset, tail, head, twin)
    euler = g.n - g.m + g.num_faces
    if euler != 2:
        raise PlaneGraphError(f"rotation system is not planar (n - m + f = {euler})")
    return g


def _bfs_code(rotations, u: int, v: int) -> tuple:
    """Rotation system relabelled by a BFS that starts along dart (u, v).

    Each vertex lists its neighbours cyclically from the one it was reached
    through, so the code depends only on the embedding and the start dart.
    """
    label = {u: 0}
    ref = {u: v}
    order = [u]
    rows = []
    for x in order:
        r = rotations[x]
        i = r.index(ref[x])
        row = []
        for y in r[i:] + r[:i]:
            if y not in label:
                label[y] = len(order)
                ref[y] = x
                order.append(y)
            row.append(label[y])
        rows.append(tuple(row))
    return tuple(rows)


def canonical_form(g: PlaneGraph, mirror: bool = True,
                   keep_outer: bool = True) -> tuple:
    """Isomorphism invariant of the plane graph.

    Two plane graphs get equal codes exactly when a relabelling maps one
    embedding (and, with ``keep_outer``, the outer face) onto the other.
    Reflections count as equal when ``mirror`` is set.
    """
    rots = [list(r) for r in g.rotations]
    if keep_outer:
        face = list(g.face_vertices(g.outer_face))
        k = len(face)
        starts = [(face[i], face[(i + 1) % k]) for i in range(k)]
    else:
        starts = [(u, v) for u in range(g.n) for v in rots[u]]
    variants = [(rots, starts)]
    if mirror:
        variants.append(([r[::-1] for r in rots], [(v, u) for u, v in starts]))
    best = None
    for rot, darts in variants:
        for u, v in darts:
            code = _bfs_code(rot, u, v)
            if best is None or code < best:
                best = code
    return (g.n, best)


def trace_faces(g: PlaneGraph) -> list[Face]:
    return g.faces


# ---------------------------------------------------------------------------
# Dual graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DualGraph:
    """Face adjacency multigraph; dual edge ``e`` crosses primal edge ``e``.

    ``endpoints[e]`` is the pair (face left of the dart u -> v, face of its
    twin) for primal edge e = (u, v), u < v.  The dual edges around face ``f``
    in boundary order are ``rotation_seq[rotation_ptr[f]:rotation_ptr[f+1]]``.
    """

    num_faces: int
    endpoints: np.ndarray
    rotation_ptr: np.ndarray
    rotation_seq: np.ndarray

    @property
    def m(self) -> int:
        return len(self.endpoints)

    def degree(self, f: int) -> int:
        return int(self.rotation_ptr[f + 1] - self.rotation_ptr[f])

    def degrees(self) -> np.ndarray:
        return np.diff(self.rotation_ptr)

    def rotation(self, f: int) -> tuple[int, ...]:
        lo, hi = self.rotation_ptr[f], self.rotation_ptr[f + 1]
        return tuple(self.rotation_seq[lo:hi].tolist())


def build_dual(g: PlaneGraph) -> DualGraph:
    forward = np.nonzero(g.tail < g.head)[0]
    endpoints = np.stack([g.face_of[forward], g.face_of[g.twin[forward]]], axis=1)
    return DualGraph(g.num_faces, endpoints, g.face_ptr, g.edge_of[g.face_seq])


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def is_quadrangulation(g: PlaneGraph) -> bool:
    """Every face is bounded by a 4-cycle of distinct vertices."""
    if g.num_faces < 2 or (g.face_degrees() != 4).any():
        return False
    corners = np.sort(g.tail[g.face_seq].reshape(-1, 4), axis=1)
    return bool((np.diff(corners, axis=1) != 0).all())


def is_triangulation(g: PlaneGraph) -> bool:
    return g.n >= 3 and bool((g.face_degrees() == 3).all())


@dataclass(frozen=True)
class Classification:
    is_quadrangulation: bool
    is_triangulation: bool
    is_stacked: bool
    stacking_tree: Optional["StackingTree"] = field(default=None, repr=False)


def classify(g: PlaneGraph) -> Classification:
    from .stacking import stacking_tree

    quad = is_quadrangulation(g)
    tri = is_triangulation(g)
    tree = stacking_tree(g) if tri else None
    return Classification(quad, tri, tree is not None, tree)


# ---------------------------------------------------------------------------
# Guard verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GuardReport:
    valid: bool
    unguarded_faces: tuple[int, ...]


def _guard_array(g: PlaneGraph, guards: Iterable[Edge]) -> np.ndarray:
    arr = np.array([edge_key(int(u), int(v)) for u, v in guards],
                   dtype=np.int64).reshape(-1, 2)
    if len(arr) == 0:
        return arr
    keys = arr[:, 0] * g.n + arr[:, 1]
    if len(np.unique(keys)) != len(keys):
        raise PlaneGraphError("guard set contains duplicate edges")
    if (arr < 0).any() or (arr >= g.n).any():
        bad = arr[((arr < 0) | (arr >= g.n)).any(axis=1)][0]
        raise PlaneGraphError(f"guard {tuple(bad.tolist())} is not an edge of the graph")
    ekeys = g.edges[:, 0] * g.n + g.edges[:, 1]   # increasing in dart order
    ekeys = np.sort(ekeys)
    at = np.searchsorted(ekeys, keys)
    at[at >= len(ekeys)] = 0
    miss = np.nonzero(ekeys[at] != keys)[0]
    if len(miss):
        bad = tuple(arr[miss[0]].tolist())
        raise PlaneGraphError(f"guard {bad} is not an edge of the graph")
    return arr


def verify_guard_set(g: PlaneGraph, guards: Iterable[Edge]) -> GuardReport:
    """Check that every face, the outer one included, touches a guard endpoint."""
    arr = _guard_array(g, guards)
    mark = np.zeros(g.n, dtype=np.int64)
    mark[arr.ravel()] = 1
    hits = np.bincount(g.face_of, weights=mark[g.tail], minlength=g.num_faces)
    bad = np.nonzero(hits == 0)[0]
    return GuardReport(not len(bad), tuple(bad.tolist()))


# ---------------------------------------------------------------------------
# Mutable construction helper
# ---------------------------------------------------------------------------

class RotationBuilder:
    """Mutable rotation system used by generators and gadget insertion.

    Each vertex keeps a clockwise successor map, so inserting a neighbour
    into a face corner is O(1).
    """

    def __init__(self, n: int = 0):
        self.succ: list[dict[int, int]] = [{} for _ in range(n)]

    @classmethod
    def from_graph(cls, g: PlaneGraph) -> "RotationBuilder":
        b = cls(g.n)
        for v, r in enumerate(g.rotations):
            b.set_rotation(v, r)
        return b

    @property
    def n(self) -> int:
        return len(self.succ)

    def add_vertex(self) -> int:
        self.succ.append({})
        return len(self.succ) - 1

    def set_rotation(self, v: int, nbrs: Sequence[int]) -> None:
        k = len(nbrs)
        self.succ[v] = {nbrs[i]: nbrs[(i + 1) % k] for i in range(k)}

    def insert_after(self, v: int, left: int, w: int) -> None:
        s = self.succ[v]
        s[w] = s[left]
        s[left] = w

    def face_from(self, u: int, v: int) -> list[int]:
        """Vertices of the face traced from dart u -> v."""
        out = []
        a, b = u, v
        while True:
            out.append(a)
            p = next(x for x, y in self.succ[b].items() if y == a)
            a, b = b, p
            if (a, b) == (u, v):
                return out

    def insert_vertex(self, face: Sequence[int], corners: Iterable[int]) -> int:
        """Add a vertex inside ``face`` (a face traversal) joined to ``corners``.

        ``corners`` are indices into ``face``.  The new vertex's rotation
        lists its neighbours in traversal order.
        """
        w = self.add_vertex()
        k = len(face)
        idx = sorted(set(corners))
        for i in idx:
            q = face[i]
            r = face[(i + 1) % k]
            self.insert_after(q, r, w)
        self.set_rotation(w, [face[i] for i in idx])
        return w

    def rotations(self) -> list[list[int]]:
        out = []
        for s in self.succ:
            if not s:
                out.append([])
                continue
            start = min(s)
            r = [start]
            x = s[start]
            while x != start:
                r.append(x)
                x = s[x]
            out.append(r)
        return out

    def build(self, outer: Edge) -> PlaneGraph:
        return build(self.n, self.rotations(), outer)
