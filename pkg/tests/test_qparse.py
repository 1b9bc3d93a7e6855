"""Parser, input specs, JSON documents and the command line."""

import json
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import CONSTANT_RANK, SKEW_CUBIC, sym_matrices
from quadbetti.cli import main
from quadbetti.exactnum import I, GaussianRational
from quadbetti.qparse import (
    InputSpec,
    QuadricParseError,
    analysis_to_json,
    format_quadric,
    parse_gaussian,
    parse_matrix,
    parse_quadric,
    report_from_json,
    run,
)


def test_parse_skew_cubic_q0():
    Q = parse_quadric("z0*z2 - z1^2", 3)
    assert Q[0, 2] == Q[2, 0] == Fraction(1, 2)
    assert Q[1, 1] == -1
    nonzero = [(i, j) for i in range(4) for j in range(4) if not Q[i, j].is_zero()]
    assert sorted(nonzero) == [(0, 2), (1, 1), (2, 0)]


def test_parse_imaginary_coefficient():
    assert parse_quadric("i*z0^2", 0)[0, 0] == I


def test_parse_products_and_literals():
    Q = parse_quadric(" (1+i)/2 * z0 z1 + (2-3i)*z2^2 ", 2)
    assert Q[0, 1] == GaussianRational(Fraction(1, 4), Fraction(1, 4))
    assert Q[2, 2] == GaussianRational(2, -3)
    # without parentheses the literal splits: 2 - 3i*z2^2 has a constant term
    with pytest.raises(QuadricParseError) as e:
        parse_quadric("2-3i*z2^2", 2)
    assert e.value.kind == QuadricParseError.NOT_QUADRATIC


@pytest.mark.parametrize(
    "text,n,kind",
    [
        ("z0*z1 + z2", 2, QuadricParseError.NOT_QUADRATIC),
        ("z0^3", 2, QuadricParseError.NOT_QUADRATIC),
        ("z0*z5", 2, QuadricParseError.OUT_OF_RANGE),
        ("1/0*z0^2", 1, QuadricParseError.BAD_COEFFICIENT),
        ("z0^2 + @", 1, QuadricParseError.BAD_COEFFICIENT),
        ("", 1, QuadricParseError.ZERO_FORM),
        ("z0^2 - z0^2", 1, QuadricParseError.ZERO_FORM),
    ],
)
def test_parse_errors(text, n, kind):
    with pytest.raises(QuadricParseError) as e:
        parse_quadric(text, n)
    assert e.value.kind == kind


def test_gaussian_literals():
    assert parse_gaussian("-1/2") == Fraction(-1, 2)
    assert parse_gaussian("2-3i") == GaussianRational(2, -3)
    assert parse_gaussian("(1+i)/2") == GaussianRational(Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(QuadricParseError):
        parse_gaussian("z0")


@given(sym_matrices(max_size=4, sparse=True))
def test_format_parse_roundtrip(Q):
    if Q.is_zero():
        return
    assert parse_quadric(format_quadric(Q), Q.size - 1) == Q


def test_matrix_input():
    Q = parse_matrix([["1", ["0", "1/2"]], [["0", "1/2"], 0]], 1)
    assert Q[0, 1] == GaussianRational(0, Fraction(1, 2))
    with pytest.raises(QuadricParseError):
        parse_matrix([[1.5, 0], [0, 1]], 1)
    with pytest.raises(QuadricParseError):
        parse_matrix([["1", "2"], ["3", "1"]], 1)


def test_spec_validation():
    with pytest.raises(ValueError):
        InputSpec(n=2, quadrics=[]).matrices()
    with pytest.raises(QuadricParseError):
        InputSpec(n=20, quadrics=["z0^2"]).matrices()


# --- run ---

def test_run_skew_cubic_json():
    res = run(InputSpec(n=3, quadrics=list(SKEW_CUBIC[:2]), format="json"))
    doc = json.loads(res.output)
    assert doc["betti_C"] == [1, 0, 2, 0, 0, 0, 0]
    assert doc["status"] == "resolved"
    assert res.exit_code == 0
    for key in ("version", "n", "classification", "mu", "nu", "sigma", "e2", "e_inf",
                "betti_R", "betti_C", "iC_even_ranks", "status", "candidates", "notes"):
        assert key in doc


def test_run_constant_rank():
    res = run(InputSpec(n=2, quadrics=list(CONSTANT_RANK[:2])))
    assert res.document["betti_C"] == [2, 0, 1, 0, 0]
    assert res.document["classification"] == "ConstantRank"


def test_run_single_quadric():
    res = run(InputSpec(n=2, quadrics=["z0^2+z1^2+z2^2"]))
    assert res.document["betti_C"] == [1, 0, 1, 0, 0]
    assert res.document["route"] == "single"


def test_run_zero_form_is_ambient():
    res = run(InputSpec(n=2, quadrics=["z0^2 - z0^2"]))
    assert res.document["betti_C"] == [1, 0, 1, 0, 1]


@pytest.mark.parametrize("quadrics,n", [(list(SKEW_CUBIC[:2]), 3), (["z0^2", "z1^2"], 2),
                                         (["z0^2+z1^2+z2^2+z3^2"], 3)])
def test_json_roundtrip(quadrics, n):
    res = run(InputSpec(n=n, quadrics=quadrics, dump_pages=True))
    doc = json.loads(json.dumps(res.document))
    r = report_from_json(doc)
    orig = res.analysis.report
    assert (r.betti_R, r.betti_C, r.iC_even_ranks, r.status) == \
        (orig.betti_R, orig.betti_C, orig.iC_even_ranks, orig.status)
    assert r.e2_snapshot == orig.e2_snapshot and r.e_inf_snapshot == orig.e_inf_snapshot
    assert r.candidates == orig.candidates
    assert r.pages == orig.pages
    assert analysis_to_json(res.analysis, True) == res.document


# --- cli ---

def test_cli_resolved(capsys):
    assert main(["analyze", "--q0", SKEW_CUBIC[0], "--q1", SKEW_CUBIC[1], "--n", "3"]) == 0
    assert "betti(C) = (1, 0, 2, 0, 0, 0, 0)" in capsys.readouterr().out


def test_cli_ambiguous(capsys):
    assert main(["analyze", "--q0", "z0^2", "--q1", "z1^2", "--n", "2", "--format", "json"]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "ambiguous" and len(doc["candidates"]) >= 2


def test_cli_input_error(capsys):
    assert main(["analyze", "--q0", "z0*z1 + z2", "--n", "2"]) == 1
    assert "not a quadratic form" in capsys.readouterr().err


def test_cli_input_file(tmp_path, capsys):
    f = tmp_path / "in.json"
    f.write_text(json.dumps({"n": 2, "quadrics": list(CONSTANT_RANK[:2]), "format": "json"}))
    assert main(["analyze", "--input", str(f)]) == 0
    assert json.loads(capsys.readouterr().out)["betti_C"] == [2, 0, 1, 0, 0]


def test_cli_missing_file(capsys):
    assert main(["analyze", "--input", "/nonexistent/x.json"]) == 1


def test_cli_e2_and_profile(capsys):
    assert main(["e2", "--q0", SKEW_CUBIC[0], "--q1", SKEW_CUBIC[1], "--n", "3"]) == 0
    out = capsys.readouterr().out
    assert "E_3:" in out and "d2^(2,3) rank 1 [Formula]" in out
    assert main(["profile", "--q0", SKEW_CUBIC[0], "--q1", SKEW_CUBIC[1], "--n", "3", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc["mu"], doc["nu"]) == (4, 3)
    assert doc["exists_odd_multiplicity"] is False


def test_cli_oracle(capsys):
    assert main(["oracle", "--q0", "z0^2 - z1^2", "--q1", "z0^2 - z2^2", "--n", "2", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["checks"][0]["points"] == 4 and doc["checks"][0]["agrees"]


def test_cli_nonempty_flag(capsys):
    args = ["analyze", "--q0", "z0^2", "--q1", "z1^2", "--n", "2", "--format", "json"]
    main(args)
    with_flag = json.loads(capsys.readouterr().out)
    main(args + ["--no-nonempty-constraint"])
    without = json.loads(capsys.readouterr().out)
    assert len(without["candidates"]) >= len(with_flag["candidates"])


def test_cli_deterministic(capsys):
    args = ["oracle", "--q0", "z0^2 - z1^2", "--q1", "2*z0*(z1+z2)", "--n", "2", "--seed", "5"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first
