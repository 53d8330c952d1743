import pytest

from gerechte.cli import ExitStatus, main
from gerechte.framework import parse_partition

from .conftest import FRAMEWORKS, cyclic


@pytest.fixture
def run(tmp_path):
    config = str(tmp_path / "missing.yaml")

    def run(*args):
        return main(["--config", config, "--log-level", "warning", *args])

    return run


def framework(name):
    return str(FRAMEWORKS / name)


def test_realize_then_verify(run, tmp_path, capsys):
    square = str(tmp_path / "square.txt")
    assert run("realize", "--input", framework("mixed12.txt"), "--output", square) == ExitStatus.OK
    assert "method: mixed" in capsys.readouterr().err

    assert run("verify", "--framework", framework("mixed12.txt"), "--square", square) == 0
    assert "ok" in capsys.readouterr().err


def test_realize_to_stdout(run, capsys):
    assert run("realize", "--input", framework("sudoku4_rects.txt")) == 0
    out = capsys.readouterr().out
    assert len(out.splitlines()) == 4


def test_realize_with_method_outside_family(run, capsys):
    assert run("realize", "--input", framework("tree12.txt"), "--method", "uniform") == 3


def test_verify_reports_violations(run, tmp_path, capsys):
    square = tmp_path / "cyclic.txt"
    square.write_text(cyclic(4).to_text())
    assert run("verify", "--framework", framework("sudoku4_rects.txt"), "--square", str(square)) == 1
    assert "region" in capsys.readouterr().err


def test_verify_size_mismatch(run, tmp_path):
    square = tmp_path / "cyclic.txt"
    square.write_text(cyclic(3).to_text())
    assert run("verify", "--framework", framework("sudoku4_rects.txt"), "--square", str(square)) == 2


def test_input_errors(run, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1 x\n2 2\n")
    assert run("realize", "--input", str(bad)) == ExitStatus.INPUT_ERROR
    assert run("classify", "--input", str(tmp_path / "nowhere.txt")) == ExitStatus.INPUT_ERROR


@pytest.mark.parametrize("budget", ["-5", "0"])
def test_invalid_budget_is_an_input_error(run, budget):
    args = ("realize", "--input", framework("sudoku4_rects.txt"), "--budget", budget)
    assert run(*args) == ExitStatus.INPUT_ERROR


def test_explicit_budget_is_used(run):
    args = ("realize", "--input", framework("sudoku4_rects.txt"), "--method", "brute")
    assert run(*args, "--budget", "1") == ExitStatus.UNSUPPORTED
    assert run(*args) == ExitStatus.OK


def test_invalid_config_budget_is_an_input_error(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("brute_force:\n  max_order: 0\n")
    args = ["--config", str(config), "--log-level", "warning"]
    args += ["realize", "--input", framework("sudoku4_rects.txt")]
    assert main(args) == ExitStatus.INPUT_ERROR


def test_unrealizable_framework(run, tmp_path):
    diagonals = tmp_path / "diagonals.txt"
    diagonals.write_text("2\n1 2\n2 1\n")
    assert run("realize", "--input", str(diagonals)) == ExitStatus.FAILURE


def test_classify(run, capsys):
    assert run("classify", "--input", framework("columns12.txt")) == 0
    assert capsys.readouterr().out == "columns tree\n"


def test_reduce(run, capsys):
    assert run("reduce", "--input", framework("mixed12.txt"), "--k", "2") == 0
    reduced = parse_partition(capsys.readouterr().out)
    assert reduced == parse_partition((FRAMEWORKS / "mixed12_reduced.txt").read_text())


def test_refine(run, capsys):
    assert run("refine", "--input", framework("tree12.txt")) == 0
    assert parse_partition(capsys.readouterr().out).num_regions == 20


def test_generate_is_deterministic(run, capsys):
    args = ("generate", "--class", "mixed", "--s", "2", "--t", "3", "--seed", "4")
    assert run(*args) == 0
    first = capsys.readouterr().out
    assert run(*args) == 0
    assert capsys.readouterr().out == first
    assert parse_partition(first).order == 6


def test_generate_needs_parameters(run):
    assert run("generate", "--class", "tree") == ExitStatus.UNSUPPORTED


def test_census(run, tmp_path, capsys):
    db = str(tmp_path / "census.db")
    assert run("census", "--n", "4", "--no-progress", "--db", db) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("n\tframeworks\trealized\tclass_counts\n4\t9\t9\t")
    assert "all realizable: yes" in captured.err


def test_census_above_cap(run):
    assert run("census", "--n", "7", "--no-progress") == ExitStatus.UNSUPPORTED


def test_render(run, tmp_path):
    output = tmp_path / "framework.png"
    assert run("render", "--framework", framework("tree12.txt"), "--output", str(output)) == 0
    assert output.read_bytes().startswith(b"\x89PNG")
