from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from edgeguard.generators import gen_qk, gen_random_quad_2deg
from edgeguard.plane_graph import build_dual, verify_guard_set
from edgeguard.quad_guard import (
    ColoringConsistencyError, GuardColoring, QuadGuardError, TwoFactor, euler_orient,
    guard_candidates, guard_quadrangulation, parity_coloring, quad_pipeline,
    two_factor, validate_guard_coloring,
)

from helpers import brute_minimum, k4, square


def test_orientation_is_balanced():
    g = gen_random_quad_2deg(30, 4)
    d = build_dual(g)
    o = euler_orient(d)
    assert (o.out_degrees(d.num_faces) == 2).all()
    assert (o.in_degrees(d.num_faces) == 2).all()


def test_two_factor_has_degree_two():
    g = gen_qk(4)
    d = build_dual(g)
    h = two_factor(d, euler_orient(d))
    assert (h.degrees(d) == 2).all()
    assert h.mask.sum() == d.num_faces


def test_square_guard():
    assert len(guard_quadrangulation(square())) == 1


def test_non_quadrangulation_rejected():
    with pytest.raises(QuadGuardError):
        guard_quadrangulation(k4())


def test_wrong_two_factor_is_detected():
    g = gen_qk(2)
    mask = np.zeros(g.m, dtype=bool)
    mask[0] = True
    with pytest.raises(ColoringConsistencyError):
        parity_coloring(g, TwoFactor(mask))


def test_invalid_coloring_rejected():
    g = gen_qk(1)
    bad = GuardColoring(np.zeros(g.n, dtype=np.int64))
    assert not validate_guard_coloring(g, bad).valid
    with pytest.raises(QuadGuardError):
        guard_candidates(g, bad)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(4, 400), seed=st.integers(0, 10**6))
def test_pipeline_properties(n, seed):
    g = gen_random_quad_2deg(n, seed)
    run = quad_pipeline(g)
    assert validate_guard_coloring(g, run.coloring).valid
    cands = guard_candidates(g, run.coloring)
    assert sum(cands.sizes) == n
    for cand in (cands.cover_a, cands.cover_b):
        assert verify_guard_set(g, cand).valid
    assert verify_guard_set(g, run.guards).valid
    assert len(run.guards) <= n // 3
    assert run.guards == sorted(run.guards)


@pytest.mark.parametrize("n, seed", [(n, s) for n in range(4, 11) for s in range(3)])
def test_never_below_the_optimum(n, seed):
    g = gen_random_quad_2deg(n, seed)
    assert brute_minimum(g) <= len(guard_quadrangulation(g)) <= n // 3


def test_deterministic():
    g = gen_random_quad_2deg(500, 9)
    assert guard_quadrangulation(g) == guard_quadrangulation(g)
