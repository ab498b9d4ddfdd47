from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from edgeguard.generators import gen_random_quad_2deg, gen_random_stacked
from edgeguard.plane_graph import (
    PlaneGraphError, RotationBuilder, build, build_dual, canonical_form, classify,
    edge_key, is_quadrangulation, is_triangulation, verify_guard_set,
)

from helpers import k4, octahedron, relabel, square


def test_k4_faces_and_outer():
    g = k4()
    assert (g.n, g.m, g.num_faces) == (4, 6, 4)
    assert set(g.face_vertices(g.outer_face)) == {0, 1, 2}
    assert all(f.degree == 3 for f in g.faces)
    assert sum(f.is_outer for f in g.faces) == 1


def test_rotations_start_at_smallest_neighbour():
    g = build(4, [[3, 2, 1], [3, 0, 2], [3, 1, 0], [1, 2, 0]], (0, 1))
    assert all(r[0] == min(r) for r in g.rotations)


def test_every_dart_in_exactly_one_face():
    g = gen_random_stacked(50, 1)
    seen = sorted(d for f in range(g.num_faces) for d in g.face_darts(f))
    assert seen == list(range(2 * g.m))


def test_face_rule_follows_twin_predecessor():
    g = k4()
    for d in range(2 * g.m):
        t = int(g.twin[d])
        v = int(g.tail[t])
        rot = g.rotations[v]
        i = rot.index(int(g.head[t]))
        pred = rot[i - 1]
        assert int(g.face_next[d]) == g.dart(v, pred)


@pytest.mark.parametrize("rot, outer, msg", [
    ([[0, 1], [0]], (0, 1), "loop"),
    ([[1, 1], [0, 0]], (0, 1), "parallel"),
    ([[1], [0], [3], [2]], (0, 1), "disconnected"),
    ([[1, 2], [2], [0, 1]], (0, 1), "inconsistent"),
    ([[1, 2], [0, 2], [0, 1]], (0, 5), "range"),
])
def test_invalid_inputs_are_rejected(rot, outer, msg):
    with pytest.raises(PlaneGraphError):
        build(len(rot), rot, outer)


def test_non_planar_rotation_rejected():
    # K4 with one rotation flipped gives a genus-1 embedding
    with pytest.raises(PlaneGraphError, match="planar"):
        build(4, [[1, 2, 3], [2, 3, 0], [0, 3, 1], [0, 1, 2]], (0, 1))


def test_outer_pair_must_be_an_edge():
    with pytest.raises(PlaneGraphError):
        build(4, [[1, 3], [2, 0], [3, 1], [0, 2]], (0, 2))


def test_dual_endpoints_cross_primal_edges():
    g = gen_random_quad_2deg(40, 2)
    d = build_dual(g)
    assert d.m == g.m and d.num_faces == g.num_faces
    assert (d.degrees() == 4).all()
    for e, (u, v) in enumerate(g.edge_list):
        faces = {int(g.face_of[g.dart(u, v)]), int(g.face_of[g.dart(v, u)])}
        assert set(d.endpoints[e].tolist()) == faces


def test_classification():
    assert is_quadrangulation(square()) and not is_triangulation(square())
    c = classify(k4())
    assert c.is_triangulation and c.is_stacked and not c.is_quadrangulation
    c = classify(octahedron())
    assert c.is_triangulation and not c.is_stacked


def test_verify_guard_set():
    g = k4()
    assert verify_guard_set(g, [(0, 3)]).valid
    rep = verify_guard_set(build(6, octahedron().rotations, (0, 1)), [(0, 1)])
    assert not rep.valid and len(rep.unguarded_faces) == 2
    with pytest.raises(PlaneGraphError):
        verify_guard_set(g, [(0, 3), (3, 0)])
    with pytest.raises(PlaneGraphError):
        verify_guard_set(square(), [(0, 2)])


def test_rotation_builder_stacking_matches_generator():
    b = RotationBuilder(3)
    b.set_rotation(0, [1, 2])
    b.set_rotation(1, [2, 0])
    b.set_rotation(2, [0, 1])
    b.insert_vertex([0, 1, 2], (0, 1, 2))
    g = b.build((0, 2))
    assert g == gen_random_stacked(4, 0)
    assert edge_key(3, 1) == (1, 3)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(4, 40), seed=st.integers(0, 10**6), data=st.data())
def test_canonical_form_is_label_invariant(n, seed, data):
    g = gen_random_stacked(n, seed)
    perm = data.draw(st.permutations(range(n)))
    h = relabel(g, list(perm))
    assert canonical_form(h) == canonical_form(g)
    assert canonical_form(h, keep_outer=False) == canonical_form(g, keep_outer=False)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(4, 60), seed=st.integers(0, 10**6))
def test_euler_formula_on_random_families(n, seed):
    for g in (gen_random_stacked(n, seed), gen_random_quad_2deg(n, seed)):
        assert g.n - g.m + g.num_faces == 2
        assert int(np.sum(g.face_degrees())) == 2 * g.m
