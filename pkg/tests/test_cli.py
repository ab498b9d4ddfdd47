from __future__ import annotations

import csv
import io

import pytest

from edgeguard.cli import main
from edgeguard.generators import gen_qk, gen_random_stacked
from edgeguard.graph_io import parse_guards, parse_pg1, serialize_pg1
from edgeguard.plane_graph import verify_guard_set


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def stacked_file(tmp_path):
    p = tmp_path / "s.pg1"
    p.write_text(serialize_pg1(gen_random_stacked(40, 2)))
    return p


@pytest.fixture
def quad_file(tmp_path):
    p = tmp_path / "q.pg1"
    p.write_text(serialize_pg1(gen_qk(3)))
    return p


def test_gen_outputs_pg1(capsys):
    code, out, _ = run(capsys, "gen", "--family", "qk", "--k", "3")
    assert code == 0 and parse_pg1(out) == gen_qk(3)
    code, out, _ = run(capsys, "gen", "--family", "rand-stacked", "--n", "20", "--seed", "4")
    assert code == 0 and parse_pg1(out) == gen_random_stacked(20, 4)


def test_solve_and_verify(capsys, stacked_file, tmp_path):
    code, out, err = run(capsys, "solve", "--trace", str(stacked_file))
    assert code == 0
    guards = parse_guards(out)
    g = parse_pg1(stacked_file.read_text())
    assert verify_guard_set(g, guards).valid and len(guards) <= 2 * g.n // 7
    assert err.splitlines()[0].startswith("base")
    gfile = tmp_path / "s.guards"
    gfile.write_text(out)
    code, out, _ = run(capsys, "verify", str(stacked_file), str(gfile))
    assert code == 0 and out.startswith("valid")


def test_solve_quad(capsys, quad_file):
    code, out, err = run(capsys, "solve", "--algo", "quad", "--trace", str(quad_file))
    assert code == 0 and len(parse_guards(out)) <= 14 // 3
    assert err.startswith("quad")


def test_verify_failure_exit_code(capsys, quad_file, tmp_path):
    gfile = tmp_path / "bad.guards"
    gfile.write_text("GUARDS 1\n0 2\n")
    code, out, _ = run(capsys, "verify", str(quad_file), str(gfile))
    assert code == 1 and out.startswith("invalid")


def test_oracle(capsys, quad_file):
    code, out, _ = run(capsys, "oracle", "--count", str(quad_file))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "minimum 3" and lines[1].startswith("optima ")


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--family", "rand_quad_2deg", "--sizes", "50,100")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["n"]) for r in rows] == [50, 100]
    assert all(int(r["guards"]) <= int(r["bound"]) for r in rows)
    assert all(int(r["ops"]) > 0 for r in rows)


def test_render(capsys, quad_file, tmp_path):
    gfile = tmp_path / "q.guards"
    gfile.write_text("GUARDS 1\n0 2\n")
    code, out, _ = run(capsys, "render", "--format", "dot", str(quad_file), str(gfile))
    assert code == 0 and out.startswith("graph G {") and "0 -- 2 [color=red" in out
    code, out, _ = run(capsys, "render", "--format", "svg", str(quad_file))
    assert code == 0 and out.startswith("<svg") and out.rstrip().endswith("</svg>")


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["gen", "--family", "qk"],
    ["gen", "--family", "nope", "--k", "2"],
    ["solve", "--bogus-flag", "x"],
    ["solve", "/nonexistent/file.pg1"],
    ["bench", "--family", "qk", "--sizes", "a,b"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_malformed_input_is_usage_error(capsys, tmp_path):
    p = tmp_path / "bad.pg1"
    p.write_text("PG1 4 4\n2 1 3\n")
    code, _, err = run(capsys, "solve", str(p))
    assert code == 2 and "line" in err


def test_solve_rejects_other_graph_classes(capsys, tmp_path):
    from helpers import octahedron
    p = tmp_path / "oct.pg1"
    p.write_text(serialize_pg1(octahedron()))
    assert run(capsys, "solve", str(p))[0] == 2
