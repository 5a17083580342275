"""
Tests for the command-line entry point
"""
import json
import time

import pytest

import app
from src.algebra.free_superalgebra import ParityMode, parse_element
from src.cli.commands import EXIT_CONFIG_ERROR, EXIT_OK
from src.cli.parser import create_parser
from src.cli.verification import run_suite


def _json(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("argv,count", [
    (["--variant", "b", "--parity", "even", "--i", "2", "--j", "4"], 3),
    (["--variant", "b", "--parity", "even", "--i", "1", "--j", "3"], 0),
    (["--variant", "b0", "--parity", "odd", "--i", "0", "--j", "0"], 1),
])
def test_enumerate_counts(capsys, argv, count):
    """Listing sizes of a few bidegrees"""
    assert app.main(["enumerate", "--format", "json"] + argv) == EXIT_OK
    assert len(_json(capsys)) == count


def test_enumerate_basis_file(capsys, basis_file):
    """A basis file lists its elements in order"""
    path = basis_file("b0", "odd", 3, 5)
    assert app.main(["enumerate", "--parity", "odd", "--i", "3", "--j", "5",
                     "--basis", str(path), "--format", "json"]) == EXIT_OK
    rows = _json(capsys)
    assert [r["index"] for r in rows] == [1, 2, 3, 4, 5, 6]
    assert rows[0]["i"] == 3 and rows[0]["j"] == 5


def test_diff_command(capsys):
    """z is a cycle for odd d"""
    assert app.main(["diff", "--parity", "odd", "[[1,3],2]", "--format", "json"]) == EXIT_OK
    rows = _json(capsys)
    assert rows[1]["role"] == "image"
    assert rows[1]["element"] == "0"


def test_homology_single_bidegree(capsys):
    """H(2,4) for odd d is free of rank two"""
    argv = ["homology", "--parity", "odd", "--i", "2", "--j", "4", "--format", "json"]
    assert app.main(argv) == EXIT_OK
    (row,) = _json(capsys)
    assert row["rank"] == 2
    assert row["torsion"] == []
    assert row["truncated"] is False


def test_homology_table_csv(capsys):
    """CSV output has the table header"""
    assert app.main(["homology", "--i-max", "1", "--format", "csv"]) == EXIT_OK
    header = capsys.readouterr().out.splitlines()[0]
    assert header == "variant,parity,i,j,dimension,rank,torsion,truncated"


def test_output_file(tmp_path, capsys):
    """--output writes the rendered result instead of printing it"""
    target = tmp_path / "basis.json"
    assert app.main(["enumerate", "--i", "1", "--j", "2", "--format", "json",
                     "--output", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert len(json.loads(target.read_text())) == 1


@pytest.mark.parametrize("argv", [
    ["homology", "--coefficients", "mod-p"],
    ["homology", "--coefficients", "mod-p", "--prime", "4"],
    ["homology", "--differential", "bar"],
    ["primitive-projection", "[1,2]", "--coefficients", "integers"],
    ["diff", "[1,2"],
    ["matrix", "--i", "3", "--j", "5", "--source-basis", "missing.txt"],
])
def test_configuration_errors(capsys, argv):
    """Invalid options and malformed input exit with status 2"""
    assert app.main(argv) == EXIT_CONFIG_ERROR


def test_verify_small_suite(capsys):
    """The complex suite passes at a small bound"""
    assert app.main(["verify", "--suite", "complex", "--bound", "2", "--format", "json"]) == EXIT_OK
    rows = _json(capsys)
    assert rows
    assert all(r["passed"] for r in rows)


def test_verify_chord_suite(capsys):
    """Primitive chord dimensions and circular invariance pass through degree three"""
    assert app.main(["verify", "--suite", "chord", "--bound", "3", "--format", "json"]) == EXIT_OK
    rows = _json(capsys)
    checks = {r["check"]: r["passed"] for r in rows}
    assert checks["primitive dimensions 4T"]
    assert checks["primitive dimensions 4T and 1T"]
    assert checks["circular invariance b odd"]
    assert checks["circular invariance b0 even"]


@pytest.mark.slow
def test_complex_suite_default_bound_is_fast():
    """The complex suite finishes within five minutes at its default bound"""
    started = time.monotonic()
    report = run_suite("complex")
    assert report.passed
    assert time.monotonic() - started < 300


def test_primitive_projection_command(capsys):
    """P1(u) for odd d through the command line"""
    argv = ["primitive-projection", "--parity", "odd", "[1,3].[2,4]", "--format", "json"]
    assert app.main(argv) == EXIT_OK
    rows = _json(capsys)
    odd = ParityMode.ODD
    assert parse_element(rows[1]["element"], odd) == parse_element("[1,3].[2,4] - [1,2].[3,4]", odd)
    assert rows[1]["primitive"] is True


def test_parser_requires_a_command():
    """Running without a subcommand is a usage error"""
    with pytest.raises(SystemExit):
        create_parser().parse_args([])
