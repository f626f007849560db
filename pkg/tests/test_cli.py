import json

import pytest

from cspforge.cli import main
from cspforge.model import parse_instance


@pytest.fixture
def example(tmp_path, example_text):
    path = tmp_path / "ex.csp"
    path.write_text(example_text)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_both_methods(capsys, example):
    assert run(capsys, "eval", example) == (0, "7/2\n", "")
    code, out, _ = run(capsys, "eval", example, "--method", "elim")
    assert code == 0 and out == "7/2\n"


def test_usage_errors(capsys, example):
    assert run(capsys, "eval")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "reduce", example, "--step", "unweight-back", "--out", "x")[0] == 1


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.csp"
    bad.write_text("domain 2\nfunction f 1\n0 : -1\nend\n")
    code, _, err = run(capsys, "eval", bad)
    assert code == 2 and "line 3" in err
    assert run(capsys, "eval", tmp_path / "missing.csp")[0] == 2


def test_blowup_exit(capsys, tmp_path):
    big = tmp_path / "big.csp"
    big.write_text("domain 2\nfunction f 1\n0 : 40\n1 : 40\nend\nconstraint f v\n")
    code, _, err = run(capsys, "pipeline", big, "--route", "A", "--out", tmp_path / "o", "--cap", "50")
    assert code == 3 and "unweight" in err
    assert run(capsys, "eval", big, "--cap", "1")[0] == 3


def test_reduce_scale_on_integer_instance(capsys, tmp_path):
    src = tmp_path / "int.csp"
    src.write_text("domain 2\nfunction f 1\n1 : 2\n0 : 3\nend\nconstraint f v\n")
    out = tmp_path / "out.csp"
    code, stdout, _ = run(capsys, "reduce", src, "--step", "scale", "--out", out)
    assert code == 0 and stdout == "1\n"
    assert parse_instance(out.read_text()) == parse_instance(src.read_text())
    cert = json.loads((tmp_path / "out.csp.cert").read_text())
    assert cert["step"] == "scale" and cert["phi"] == "1"


def test_reduce_forward_then_backward(capsys, tmp_path):
    src = tmp_path / "f.csp"
    src.write_text("domain 2\nfunction f 1\n0 : 2\n1 : 1\nend\nconstraint f v\n")
    mid, cert, back = tmp_path / "mid.csp", tmp_path / "c.json", tmp_path / "back.csp"
    assert run(capsys, "reduce", src, "--step", "unweight", "--out", mid, "--cert", cert)[:2] == (0, "1\n")
    assert run(capsys, "eval", mid)[1] == "3\n"
    assert run(capsys, "reduce", mid, "--step", "unweight-back", "--cert", cert, "--out", back)[0] == 0
    assert run(capsys, "eval", back)[1] == "3\n"


def test_pipeline_and_digraphs(capsys, tmp_path, example):
    out, dg = tmp_path / "b.csp", tmp_path / "b.dg"
    code, stdout, _ = run(capsys, "pipeline", example, "--route", "B", "--out", out, "--digraphs", dg)
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0].startswith("step input") and lines[-1].startswith("phi_total ")
    assert dg.read_text().startswith("digraphs ")


def test_verify_exit_codes(capsys, example):
    code, out, _ = run(capsys, "verify", example, "--route", "A", "--seed", "7")
    assert code == 0 and out.startswith("PASS route 7 7/2")
    code, out, _ = run(capsys, "verify", example, "--step", "product")
    assert code == 0 and out.startswith("PASS product")


def test_gen_is_deterministic(capsys, tmp_path):
    args = ["gen", "--seed", "4", "--domain", "3", "--vars", "4", "--constraints", "4",
            "--max-arity", "3", "--max-num", "6", "--max-den", "4", "--lambda"]
    first = run(capsys, *args)[1]
    assert first == run(capsys, *args)[1]
    parse_instance(first)


def test_stats_and_trivial_domain_warning(capsys, tmp_path, example):
    code, out, _ = run(capsys, "stats", example)
    assert code == 0 and "projected A_unweight_domain" in out
    one = tmp_path / "one.csp"
    one.write_text("domain 1\nvar a b\n")
    code, out, err = run(capsys, "eval", one)
    assert (code, out) == (0, "1\n") and "warning" in err


def test_verify_failure_exit(capsys, monkeypatch, example):
    from fractions import Fraction

    from cspforge import verify
    from cspforge.reductions import Transformed

    def broken(inst):
        return Transformed(Fraction(2), inst, verify.Certificate("strip", Fraction(2)))

    monkeypatch.setitem(verify.FORWARD, "strip", broken)
    code, out, err = run(capsys, "verify", example, "--step", "strip")
    assert code == 4 and out.startswith("FAIL strip") and "phi * Z(target)" in err
