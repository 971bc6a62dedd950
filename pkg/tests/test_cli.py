import json

import pytest

from dpx.cli import EXIT_CAPACITY, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_curves_count(capsys):
    assert run(capsys, "curves", "--r", "8", "--kind", "minus-one", "--count") == (0, "240\n", "")


def test_h0(capsys):
    code, out, _ = run(capsys, "h0", "--r", "5", "--class", "0;0,0,0,0,0")
    assert (code, out) == (0, "1\n")
    code, out, _ = run(capsys, "h0", "--r", "5", "--class", "2;-1,-1,-2,0,0", "--trace", "--format", "json")
    obj = json.loads(out)
    assert obj["h0"] == 1 and obj["trace"]["terminal_kind"] == "nef"


def test_hilbert_polynomial_json(capsys):
    from fractions import Fraction

    from dpx import reference as ref

    code, out, _ = run(capsys, "hilbert", "--r", "5", "--polynomial", "--format", "json")
    coeffs = [Fraction(int(c["num"]), int(c["den"])) for c in json.loads(out)["coefficients"]]
    assert coeffs == ref.hilbert_polynomial(5)


def test_hilbert_values_csv(capsys):
    code, out, _ = run(capsys, "hilbert", "--r", "6", "--t", "3", "--format", "csv")
    assert out == "t,value\n3,1939\n"


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--r", "5", "--class", "1;-1,0,0,0,0")
    assert out.strip().endswith("size: 10 (Q)")


def test_betti(capsys):
    code, out, _ = run(capsys, "betti", "--r", "5", "--i", "2", "--class", "2;-2,0,0,0,0")
    assert out == "1\n"
    code, out, _ = run(capsys, "betti", "--r", "4", "--diagram", "--format", "json")
    assert json.loads(out)["rows"] == [[1, 0, 0, 0], [0, 5, 5, 0], [0, 0, 0, 1]]


def test_points_deterministic_and_roundtrip(capsys):
    from dpx.sections import PointConfig

    _, a, _ = run(capsys, "points", "--r", "5", "--seed", "42", "--format", "json")
    _, b, _ = run(capsys, "points", "--r", "5", "--seed", "42", "--format", "json")
    assert a == b
    pc = PointConfig.from_json(a)
    assert pc.seed == 42 and len(pc.points) == 5


def test_errors(capsys):
    code, _, err = run(capsys, "h0", "--r", "5", "--class", "1;2")
    assert code == 1 and "expected 5" in err
    code, _, err = run(capsys, "orbit", "--r", "8", "--class", "1;0,0,0,0,0,0,0,0", "--cap", "10")
    assert code == EXIT_CAPACITY
    with pytest.raises(SystemExit) as exc:
        main(["curves", "--r", "12"])
    assert exc.value.code == 2


def test_verify_paper_section(capsys):
    code, out, _ = run(capsys, "verify-paper", "--r", "4", "--section", "curves", "--section", "bsequence")
    assert code == 0
    assert out.splitlines()[-1] == "5/5 checks passed"
