from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from edgeguard.counters import OpCounter
from edgeguard.generators import (
    enumerate_stacked, gen_qk, gen_random_stacked, gen_stacked_lower,
)
from edgeguard.oracle import min_edge_guards
from edgeguard.plane_graph import classify, verify_guard_set
from edgeguard.stacked_guard import (
    GadgetContractError, GuardState, StackedGuardError, StackedSolver, TriangleQueue,
    extend_7, guard_stacked, initial_queue, insert_strong_gadget, insert_weak_gadget,
    normalize_strong, normalize_weak, remap_gadget_guards, select_triangle,
    unique_guard_6,
)
from edgeguard.stacking import realize, stacking_tree

from helpers import k4


@pytest.fixture(scope="module")
def small():
    return enumerate_stacked(10)


def _valid_sets(g, max_size=2, faces=None):
    faces = [set(f) for f in (faces if faces is not None else g.face_vertex_lists())]
    edges = sorted(g.edge_list)
    for k in range(1, max_size + 1):
        for combo in combinations(edges, k):
            ends = {x for e in combo for x in e}
            if all(f & ends for f in faces):
                yield combo


# -- small extension problems ------------------------------------------------------------

def test_unique_guard_6(small):
    for g in small[6]:
        e = unique_guard_6(g)
        assert verify_guard_set(g, [e]).valid
        for x in g.face_vertices(g.outer_face):
            a, b = unique_guard_6(g, avoid=x)
            faces = [set(f) for f in g.face_vertex_lists()]
            assert all(f & {x, a, b} for f in faces)
    with pytest.raises(StackedGuardError):
        unique_guard_6(k4())


def test_extend_7_rejects_inner_vertex(small):
    g = small[7][0]
    inner = next(v for v in range(7) if v not in g.face_vertices(g.outer_face))
    with pytest.raises(StackedGuardError):
        extend_7(g, inner)


# -- gadgets -----------------------------------------------------------------

@pytest.mark.parametrize("face", [(0, 1, 3), (1, 2, 3), (0, 2, 1)])
def test_weak_gadget_normalisation(face):
    host = k4()
    g, gad = insert_weak_gadget(host, face)
    assert g.n == 6 and classify(g).is_stacked
    x, y = gad.target
    count = 0
    for gamma in _valid_sets(g):
        fixed = normalize_weak(gad, gamma)
        assert len(fixed) <= len(gamma)
        assert verify_guard_set(g, fixed).valid
        ends = {v for e in fixed for v in e}
        assert x in ends and y in ends
        back = remap_gadget_guards(gad, fixed, host)
        assert len(back) <= len(gamma) and verify_guard_set(host, back).valid
        count += 1
    assert count > 0


@pytest.mark.parametrize("face", [(0, 1, 3), (1, 2, 3), (2, 0, 3), (0, 2, 1)])
def test_strong_gadget_normalisation(face):
    host = k4()
    g, gad = insert_strong_gadget(host, face)
    assert g.n == 7 and classify(g).is_stacked
    ins, tri = set(gad.inserted), set(gad.host)
    count = 0
    for gamma in _valid_sets(g):
        fixed = normalize_strong(gad, gamma)
        assert len(fixed) <= len(gamma) and verify_guard_set(g, fixed).valid
        assert gad.target in {v for e in fixed for v in e}
        assert any((a in ins) != (b in ins) and {a, b} & tri for a, b in fixed)
        back = remap_gadget_guards(gad, fixed, host)
        assert len(back) <= len(gamma) and verify_guard_set(host, back).valid
        count += 1
    assert count > 0


def test_remap_rejects_internal_guard():
    g, gad = insert_weak_gadget(k4(), (0, 1, 3))
    with pytest.raises(GadgetContractError):
        remap_gadget_guards(gad, [tuple(sorted(gad.inserted))], k4())


def test_insert_gadget_needs_a_face():
    with pytest.raises(StackedGuardError):
        insert_weak_gadget(k4(), (0, 1, 5))


# -- selection -----------------------------------------------------------------

def test_queue_orders_by_count_then_node():
    q = TriangleQueue()
    for node, c in [(9, 5), (3, 7), (4, 5), (1, 10)]:
        q.push(node, c)
    assert [q.pop() for _ in range(4)] == [4, 9, 3, 1]
    assert q.pop() is None
    with pytest.raises(ValueError):
        q.push(0, 3)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(8, 200), seed=st.integers(0, 10**6))
def test_select_triangle_is_minimal(n, seed):
    t = stacking_tree(gen_random_stacked(n, seed))
    cand = select_triangle(t, initial_queue(t))
    counts = [c for c in t.interior if c >= 4]
    assert cand.interior_count == min(counts)
    assert 4 <= cand.interior_count <= 10
    assert len(cand.interior) == cand.interior_count
    assert cand.v == t.vertex[cand.node]


# -- every round, every guard set of the reduced graph ----------------------

def test_every_round_extends_every_small_guard_set(small):
    rounds = 0
    for n in range(7, 11):
        for g in small[n]:
            tree = stacking_tree(g)
            if any(tree.interior[c] > 3 for c in tree.children[0]):
                continue  # never selected: a child would be chosen first
            solver = StackedSolver(tree)
            step = solver.inductive_step(0)
            t = solver.t
            reduced, labels = realize(t.triangle, t.vertex, t.children)
            reduced_faces = solver._leaves(0)
            region = [f for i, f in enumerate(g.face_vertex_lists()) if i != g.outer_face]
            budget = 2 if step.k >= 7 else 1
            ids = {lab: i for i, lab in enumerate(labels)}
            local = [[ids[v] for v in f] for f in reduced_faces]
            for combo in _valid_sets(reduced, 2, local):
                gamma = [(labels[a], labels[b]) for a, b in combo]
                st_ = GuardState(gamma)
                step.extend(st_)
                ends = {v for e in st_.edges for v in e}
                assert all(set(f) & ends for f in region), (n, step.case, gamma)
                assert all(g.has_edge(*e) for e in st_.edges)
                assert len(st_) - len(gamma) <= budget
                rounds += 1
    assert rounds > 1000


# -- whole solver --------------------------------------------------------------

def test_small_cases():
    tri = gen_random_stacked(3, 0)
    guards, ledger = guard_stacked(tri)
    assert len(guards) == 1 and ledger[0].note == "bare triangle"
    assert guard_stacked(k4())[0] and len(guard_stacked(k4())[0]) == 1


def test_rejects_non_stacked():
    with pytest.raises(StackedGuardError):
        guard_stacked(gen_qk(2))


@pytest.mark.parametrize("k", [2, 4, 6, 8, 10])
def test_lower_family_is_tight(k):
    g = gen_stacked_lower(k)
    guards, _ = guard_stacked(g)
    assert len(guards) == k == 2 * g.n // 7


@settings(max_examples=60, deadline=None)
@given(n=st.integers(4, 400), seed=st.integers(0, 10**6))
def test_random_runs(n, seed):
    g = gen_random_stacked(n, seed)
    counter = OpCounter()
    guards, ledger = guard_stacked(g, counter)
    assert verify_guard_set(g, guards).valid
    assert len(guards) <= 2 * n // 7
    assert sum(e.l for e in ledger) == len(guards)
    assert all(7 * e.l <= 2 * e.k for e in ledger if not e.is_base)
    assert sum(e.k for e in ledger) == n
    assert not any("fallback" in e.note for e in ledger)
    assert counter["tree_nodes"] > 0


@pytest.mark.parametrize("n, seed", [(n, s) for n in (8, 9, 10, 11) for s in range(4)])
def test_not_below_optimum(n, seed):
    g = gen_random_stacked(n, seed)
    assert min_edge_guards(g).minimum <= len(guard_stacked(g)[0])
