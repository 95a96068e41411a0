import subprocess
import sys

import pytest

from hatgraph.cli import run
from hatgraph.digraph import d_family, random_tournament
from hatgraph.graph_io import format_graph, parse_graph
from hatgraph.strategy_io import parse_code, parse_strategy


@pytest.fixture
def d1_file(tmp_path):
    path = tmp_path / "d1.graph"
    path.write_text(format_graph(d_family(1)))
    return str(path)


def test_solve(d1_file, capsys, tmp_path):
    out_file = tmp_path / "opt.txt"
    assert run(["solve", d1_file, "-o", str(out_file)]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "h = 5/2^3 (0.625), status=Proven"
    assert "removed_blind = -" in out
    s = parse_strategy(out_file.read_text(), d_family(1))
    s.check_shape(d_family(1))


def test_solve_quiet_and_flags(d1_file, capsys):
    assert run(["solve", d1_file, "-q", "--no-symmetry", "--max-nodes", "1000", "--time-limit", "5"]) == 0
    assert capsys.readouterr().out == "5/2^3\n"


def test_solve_bounds_only(tmp_path, capsys):
    g = tmp_path / "g9.graph"
    g.write_text("digraph 4\n0 -> 2\n0 -> 3\n1 -> 2\n1 -> 3\n2 -> 1\n2 -> 3\n3 -> 0\n")
    assert run(["solve", str(g), "--max-nodes", "1"]) == 0
    assert "status=BoundsOnly" in capsys.readouterr().out


def test_bounds(d1_file, capsys):
    assert run(["bounds", d1_file]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "lower = 5/2^3, upper = 5/2^3, matched"
    assert lines[1] == "decimal: lower = 0.625, upper = 0.625"
    assert lines[2] == "omega = 2"


def test_bounds_tournament(tmp_path, capsys):
    t = tmp_path / "t.graph"
    t.write_text(format_graph(random_tournament(6, 1)))
    assert run(["bounds", str(t)]) == 0
    assert capsys.readouterr().out.startswith("lower = 1/2, upper = 1/2, matched")


def test_construct_then_eval(d1_file, tmp_path, capsys):
    strat = tmp_path / "s.txt"
    assert run(["construct", "d_family_strategy", "1", "-o", str(strat)]) == 0
    assert run(["eval", d1_file, str(strat)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["wins = 5", "wrong_losses = 3", "silent_losses = 0", "P = 5/2^3 (0.625)"]
    assert run(["eval", d1_file, str(strat), "-q", "--threads", "2"]) == 0
    assert capsys.readouterr().out == "5/2^3\n"


def test_construct_outputs(capsys):
    assert run(["construct", "lexicode", "3"]) == 0
    assert parse_code(capsys.readouterr().out) == (3, frozenset({0, 7}))
    assert run(["construct", "star", "2"]) == 0
    assert capsys.readouterr().out == "0 B R\n1 B R\n"
    assert run(["construct", "chain_strategy", "2", "2"]) == 0
    assert capsys.readouterr().out
    assert run(["construct", "code", "3"]) == 0


@pytest.mark.parametrize("argv", [
    ["construct", "star"],
    ["construct", "star", "0"],
    ["construct", "hamming", "3"],
    ["family", "random_tournament", "5"],
    ["family", "complete", "3", "--seed", "1"],
    ["family", "complete", "0"],
    ["solve"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_1(argv):
    assert run(argv) == 1


def test_unreadable_input_exits_2(d1_file, tmp_path):
    assert run(["solve", str(tmp_path / "missing.graph")]) == 2
    bad = tmp_path / "bad.graph"
    bad.write_text("digraph 2\n0 -> 5\n")
    assert run(["bounds", str(bad)]) == 2
    strat = tmp_path / "bad.txt"
    strat.write_text("0 B R\n")  # vertex 0 of D_1 sees two hats
    assert run(["eval", d1_file, str(strat)]) == 2


def test_family(capsys):
    assert run(["family", "random_tournament", "5", "--seed", "7"]) == 0
    assert parse_graph(capsys.readouterr().out) == random_tournament(5, 7)
    assert run(["family", "d_family", "2"]) == 0
    assert parse_graph(capsys.readouterr().out) == d_family(2)


def test_dot(d1_file, capsys):
    assert run(["dot", d1_file]) == 0
    assert "1 -> 2 [dir=both];" in capsys.readouterr().out


def test_module_entry_point(d1_file):
    proc = subprocess.run([sys.executable, "-m", "hatgraph", "solve", d1_file, "-q"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "5/2^3\n"
    proc = subprocess.run([sys.executable, "-m", "hatgraph", "family", "random_tournament", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1
