from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from edgeguard.generators import gen_qk, gen_random_quad_2deg, gen_random_stacked
from edgeguard.graph_io import (
    FormatError, parse_guards, parse_pg1, serialize_guards, serialize_pg1,
)

from helpers import square


def test_square_document():
    text = serialize_pg1(square())
    assert text.splitlines() == ["PG1 4 4", "2 1 3", "2 0 2", "2 1 3", "2 0 2", "OUTER 0 1"]
    assert text.endswith("\n")


def test_qk_round_trip():
    g = gen_qk(2)
    assert parse_pg1(serialize_pg1(g)) == g


@settings(max_examples=40, deadline=None)
@given(n=st.integers(4, 80), seed=st.integers(0, 10**6), quad=st.booleans())
def test_round_trip_is_identity(n, seed, quad):
    g = (gen_random_quad_2deg if quad else gen_random_stacked)(n, seed)
    text = serialize_pg1(g)
    h = parse_pg1(text)
    assert h == g and serialize_pg1(h) == text


def test_parse_accepts_any_rotation_start_and_spacing():
    text = "PG1 4 4\n2 3 1\n2   2 0\n2 3 1\n2 2 0\n\nOUTER 0 1\n"
    assert parse_pg1(text) == square()


@pytest.mark.parametrize("text, line, col", [
    ("", 1, 1),
    ("PG2 4 4\n", 1, 1),
    ("PG1 4 4\n2 1 3\n3 0 2\n2 1 3\n2 0 2\nOUTER 0 1\n", 3, 1),
    ("PG1 4 4\n2 1 3\n2 0 9\n2 1 3\n2 0 2\nOUTER 0 1\n", 3, 5),
    ("PG1 4 5\n2 1 3\n2 0 2\n2 1 3\n2 0 2\nOUTER 0 1\n", 1, 1),
    ("PG1 4 4\n2 1 3\n2 0 2\n2 1 3\n2 0 2\nOUTER 0 2\n", 6, 7),
    ("PG1 4 4\n2 1 3\n2 0 2\n2 1 3\n2 0 2\nEDGE 0 1\n", 6, 1),
    ("PG1 4 4\n2 1 x\n2 0 2\n2 1 3\n2 0 2\nOUTER 0 1\n", 2, 5),
])
def test_pg1_diagnostics(text, line, col):
    with pytest.raises(FormatError) as info:
        parse_pg1(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_guards_canonical():
    text = serialize_guards([(3, 1), (0, 2), (1, 3)])
    assert text == "GUARDS 2\n0 2\n1 3\n"
    assert parse_guards(text) == [(0, 2), (1, 3)]


@pytest.mark.parametrize("text", [
    "GUARDS 2\n0 2\n",
    "GUARDS 1\n2 0\n",
    "GUARDS 2\n1 3\n0 2\n",
    "GUARDS 2\n0 2\n0 2\n",
    "GUARD 1\n0 2\n",
    "GUARDS 1\n0 2 3\n",
])
def test_guards_rejects_malformed(text):
    with pytest.raises(FormatError):
        parse_guards(text)


@given(st.sets(st.tuples(st.integers(0, 50), st.integers(0, 50))
               .filter(lambda e: e[0] != e[1]), max_size=30))
def test_guards_round_trip(edges):
    text = serialize_guards(edges)
    assert serialize_guards(parse_guards(text)) == text
    assert parse_guards(text) == sorted({(min(e), max(e)) for e in edges})
