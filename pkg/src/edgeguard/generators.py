"""Instance generators: lower-bound families and seeded random graphs.

Random generators use :class:`random.Random` (Mersenne Twister) seeded with
the given integer.  The draw sequence is part of the output contract:

* ``gen_random_stacked``: keep a list of inner faces, initially
  ``[(0, 1, 2)]``.  For each new vertex ``w`` draw ``i = randrange(len)``,
  stack ``w`` into face ``(x, y, z) = faces[i]``, then set
  ``faces[i] = (w, x, y)`` and append ``(w, y, z)``, ``(w, z, x)``.
* ``gen_random_quad_2deg``: faces start as ``[(0, 1, 2, 3), (0, 3, 2, 1)]``.
  Per new vertex draw ``i = randrange(len)`` then ``side = randrange(2)``;
  for face ``(a, b, c, d)`` side 0 joins ``w`` to ``a, c`` giving faces
  ``(a, b, c, w)`` (replacing slot ``i``) and ``(c, d, a, w)`` (appended);
  side 1 joins ``w`` to ``b, d`` giving ``(b, c, d, w)`` and ``(d, a, b, w)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .plane_graph import PlaneGraph, RotationBuilder, build, canonical_form

FAMILIES = ("qk", "stacked_lower", "rand_stacked", "rand_quad_2deg")


@dataclass(frozen=True)
class GenSpec:
    family: str
    size: int
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "qk" and self.size < 1:
            raise ValueError("qk requires k >= 1")
        if self.family == "stacked_lower" and (self.size < 2 or self.size % 2):
            raise ValueError("stacked_lower requires even k >= 2")

    def generate(self) -> PlaneGraph:
        if self.family == "qk":
            return gen_qk(self.size)
        if self.family == "stacked_lower":
            return gen_stacked_lower(self.size)
        if self.family == "rand_stacked":
            return gen_random_stacked(self.size, self.seed)
        return gen_random_quad_2deg(self.size, self.seed)


def qk_labels(k: int) -> dict[str, int]:
    """Vertex ids used by :func:`gen_qk`: s=0, t=1, a_i=4i-2, b_i, c_i, d_i."""
    out = {"s": 0, "t": 1}
    for i in range(1, k + 1):
        base = 2 + 4 * (i - 1)
        for j, name in enumerate("abcd"):
            out[f"{name}{i}"] = base + j
    return out


def gen_qk(k: int) -> PlaneGraph:
    """Quadrangulation with n = 4k + 2 that needs k edge guards."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 4 * k + 2
    s, t = 0, 1
    a = [2 + 4 * i for i in range(k)]
    b = [x + 1 for x in a]
    c = [x + 2 for x in a]
    d = [x + 3 for x in a]
    rot: list[list[int]] = [[] for _ in range(n)]
    # s sits above the row of gadgets, t below; gadgets run left to right
    for i in reversed(range(k)):
        rot[s] += [c[i], a[i]]
    for i in range(k):
        rot[t] += [a[i], c[i]]
        rot[a[i]] = [s, b[i], d[i], t]
        rot[c[i]] = [s, t, d[i], b[i]]
        rot[b[i]] = [a[i], c[i]]
        rot[d[i]] = [a[i], c[i]]
    want = {s, t, a[0], c[-1]}
    g = build(n, rot, (s, a[0]))
    if set(g.face_vertices(g.outer_face)) != want:
        g = build(n, rot, (a[0], s))
    assert set(g.face_vertices(g.outer_face)) == want
    return g


def _triangle_builder() -> RotationBuilder:
    b = RotationBuilder(3)
    b.set_rotation(0, [1, 2])
    b.set_rotation(1, [2, 0])
    b.set_rotation(2, [0, 1])
    return b


def gen_stacked_lower(k: int) -> PlaneGraph:
    """Stacked triangulation with n = (7k + 4) / 2 needing k edge guards.

    The base triangulation S is grown from the triangle (0, 1, 2) by stacking
    into the inner face with the smallest sorted vertex triple.  Then every
    face of S (outer included) receives three vertices a, b, c forming a
    new face disjoint from the old boundary.
    """
    if k < 2 or k % 2:
        raise ValueError("k must be even and >= 2")
    b = _triangle_builder()
    inner = [(0, 1, 2)]
    for _ in range((k - 2) // 2):
        i = min(range(len(inner)), key=lambda j: tuple(sorted(inner[j])))
        x, y, z = inner[i]
        w = b.insert_vertex(inner[i], (0, 1, 2))
        inner[i] = (w, x, y)
        inner += [(w, y, z), (w, z, x)]
    faces = inner + [(0, 2, 1)]
    assert len(faces) == k
    for x, y, z in faces:
        a = b.insert_vertex((x, y, z), (0, 1, 2))
        bb = b.insert_vertex((a, y, z), (0, 1, 2))
        b.insert_vertex((bb, z, a), (0, 1, 2))
    return b.build((0, 2))


def stacked_lower_triangles(k: int) -> list[tuple[int, int, int]]:
    """The inserted triangles t_f of :func:`gen_stacked_lower`, one per face."""
    s = (k + 4) // 2
    return [(s + 3 * i, s + 3 * i + 1, s + 3 * i + 2) for i in range(k)]


def gen_random_stacked(n: int, seed: int = 0) -> PlaneGraph:
    if n < 3:
        raise ValueError("n must be >= 3")
    rng = random.Random(seed)
    b = _triangle_builder()
    faces = [(0, 1, 2)]
    for _ in range(n - 3):
        i = rng.randrange(len(faces))
        x, y, z = faces[i]
        w = b.insert_vertex(faces[i], (0, 1, 2))
        faces[i] = (w, x, y)
        faces.append((w, y, z))
        faces.append((w, z, x))
    return b.build((0, 2))


def gen_random_quad_2deg(n: int, seed: int = 0) -> PlaneGraph:
    if n < 4:
        raise ValueError("n must be >= 4")
    rng = random.Random(seed)
    b = RotationBuilder(4)
    for v in range(4):
        b.set_rotation(v, [(v + 1) % 4, (v + 3) % 4])
    faces = [(0, 1, 2, 3), (0, 3, 2, 1)]
    for _ in range(n - 4):
        i = rng.randrange(len(faces))
        side = rng.randrange(2)
        a, bb, c, d = faces[i]
        if side == 0:
            w = b.insert_vertex(faces[i], (0, 2))
            faces[i] = (a, bb, c, w)
            faces.append((c, d, a, w))
        else:
            w = b.insert_vertex(faces[i], (1, 3))
            faces[i] = (bb, c, d, w)
            faces.append((d, a, bb, w))
    return b.build((0, 1))


def enumerate_stacked(n_max: int, mirror: bool = True) -> dict[int, list[PlaneGraph]]:
    """Every stacked triangulation with 3..n_max vertices, up to isomorphism.

    Level n+1 stacks a vertex into each inner face of each level-n graph, so
    every stacking sequence is covered; duplicates are dropped by canonical
    form (with the outer face fixed).  Lists are in order of first discovery.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    levels = {3: [_triangle_builder().build((0, 2))]}
    for n in range(3, n_max):
        seen = set()
        nxt = []
        for g in levels[n]:
            outer = g.outer_face
            for f in range(g.num_faces):
                if f == outer:
                    continue
                b = RotationBuilder.from_graph(g)
                b.insert_vertex(list(g.face_vertices(f)), (0, 1, 2))
                h = b.build(g.outer_pair)
                code = canonical_form(h, mirror)
                if code not in seen:
                    seen.add(code)
                    nxt.append(h)
        levels[n + 1] = nxt
    return levels
