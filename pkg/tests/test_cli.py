import io
import json
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from fracreduce.cli import (
    EXIT_NO_SOLUTION,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_RESIDUAL,
    EXIT_SINGULAR,
    main,
)
from fracreduce.operators import GridFunction
from fracreduce.pipeline import REPORT_SCHEMA

SEC52 = "I^{1} x + 5 I^{3/4} x + 2 I^{1/2} x - 20 I^{1/4} x - 24 x = exp(t)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce_text(capsys):
    code, out, _ = run(capsys, "reduce", SEC52)
    assert code == EXIT_OK
    assert "q        = 4" in out
    assert "p * p_hat          = X^3 - 113 X^2 + 2848 X - 20736" in out
    assert ("T_hat    = I^{2} x - 5 I^{7/4} x + 23 I^{3/2} x - 85 I^{5/4} x + 190 I^{1} x"
            " - 440 I^{3/4} x + 672 I^{1/2} x - 720 I^{1/4} x + 864 x") in out


def test_reduce_json_naive(capsys):
    code, out, _ = run(capsys, "reduce", SEC52, "--format", "json", "--naive")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["naive"]["deg_reduced"] == 4
    assert data["minimal"]["deg_reduced"] == 3
    assert data["minimal"]["reduced_coeffs"] == ["1", "-113", "2848", "-20736"]
    assert data["t_hat"].startswith("I^{3} x")


def test_solve_text_and_json(capsys):
    code, out, _ = run(capsys, "solve", SEC52, "--n", "512")
    assert code == EXIT_OK
    assert "accepted:     yes" in out
    assert "(1/27378000) exp(t/81)" in out
    code, out, _ = run(capsys, "solve", SEC52, "--n", "256", "--format", "json", "--method", "checking")
    assert code == EXIT_OK
    payload = json.loads(out)
    jsonschema.validate(payload, REPORT_SCHEMA)
    assert payload["method"] == "checking" and payload["grid_n"] == 256


def test_solve_csv_and_verify(capsys, tmp_path):
    sol = tmp_path / "x.csv"
    code, out, _ = run(capsys, "solve", SEC52, "--n", "512", "--out", str(sol))
    assert code == EXIT_OK and f"samples:      {sol}" in out
    code, out, _ = run(capsys, "solve", SEC52, "--n", "64", "--format", "csv")
    assert code == EXIT_OK and out.startswith("t,re,im\n") and len(out.splitlines()) == 66
    code, out, _ = run(capsys, "verify", SEC52, str(sol), "--format", "json")
    assert code == EXIT_OK and json.loads(out)["accepted"] is True
    x = GridFunction.from_csv(sol.read_text())
    bad = tmp_path / "bad.csv"
    bad.write_text(GridFunction(x.a, x.b, x.n, x.values + 0.5).to_csv())
    code, out, _ = run(capsys, "verify", SEC52, str(bad))
    assert code == EXIT_RESIDUAL and "accepted: False" in out


def test_equation_from_file_and_stdin(capsys, tmp_path, monkeypatch):
    path = tmp_path / "eq.txt"
    path.write_text("@interval [0, 1]\n" + SEC52 + "\n")
    code, out, _ = run(capsys, "reduce", str(path))
    assert code == EXIT_OK and "q        = 4" in out
    monkeypatch.setattr(sys, "stdin", io.StringIO("x + I^{1/2} x = 1"))
    code, out, _ = run(capsys, "reduce", "-")
    assert code == EXIT_OK and "q        = 2" in out


def test_rhs_csv_binding(capsys, tmp_path):
    w = GridFunction.from_function(lambda t: 1 + t, 0.0, 1.0, 64)
    path = tmp_path / "w.csv"
    path.write_text(w.to_csv())
    code, out, _ = run(capsys, "solve", "x + I^{1} x = w", "--rhs-csv", str(path), "--format", "csv")
    assert code == EXIT_OK
    x = GridFunction.from_csv(out)
    assert np.max(np.abs(x.values - 1)) < 1e-10
    code, _, _ = run(capsys, "solve", "x + I^{1} x = w", "--rhs-csv", f"w={path}")
    assert code == EXIT_OK
    code, _, err = run(capsys, "solve", "x + I^{1} x = w")
    assert code == EXIT_PARSE and "unbound" in err
    code, _, _ = run(capsys, "solve", "x + I^{1} x = w", "--rhs-csv", str(tmp_path / "missing.csv"))
    assert code == EXIT_PARSE


def test_exit_codes(capsys):
    assert run(capsys, "solve", "I^{1} x = 1 @base 0")[0] == EXIT_NO_SOLUTION
    assert run(capsys, "solve", "I^{1/2} x = exp(t)")[0] == EXIT_SINGULAR
    code, _, err = run(capsys, "solve", "x + I^{1/2} = 1")
    assert code == EXIT_PARSE and "line 1, column 13" in err
    assert run(capsys, "solve", "I^{-1/2} x = 1")[0] == EXIT_PARSE
    assert run(capsys, "solve", SEC52, "--n", "8")[0] == EXIT_PARSE
    code, out, _ = run(capsys, "solve", SEC52, "--n", "64", "--tol", "1e-14")
    assert code == EXIT_OK  # the tolerance is widened to the quadrature estimate
    assert "tolerance widened" in out


def test_residual_exit_code(capsys, tmp_path):
    # I^{3/2} x = noise needs a second derivative of the data: the candidate
    # misses the equation by far more than the widened tolerance
    rng = np.random.default_rng(7)
    w = GridFunction(0.0, 1.0, 64, np.concatenate([[0.0], rng.normal(size=64)]))
    path = tmp_path / "w.csv"
    path.write_text(w.to_csv())
    code, out, err = run(capsys, "solve", "I^{3/2} x = w", "--rhs-csv", str(path), "--tol", "1e-9")
    assert code == EXIT_RESIDUAL
    assert "accepted:     no" in out and "exceeds tolerance" in err


def test_ml(capsys):
    code, out, _ = run(capsys, "ml", "1", "1", "1")
    assert code == EXIT_OK and out.strip() == "2.718281828459045"
    code, out, _ = run(capsys, "ml", "2", "1", "-4")
    assert float(out) == pytest.approx(np.cos(2), abs=1e-15)
    code, out, _ = run(capsys, "ml", "1", "1", "1j")
    assert complex(out) == pytest.approx(np.exp(1j), abs=1e-15)
    assert run(capsys, "ml", "1", "1", "100")[0] != EXIT_OK


def test_convergence(capsys):
    code, out, _ = run(capsys, "convergence", SEC52, "--n-list", "256,512,1024", "--format", "json")
    rows = json.loads(out)
    assert code == EXIT_OK and [r["n"] for r in rows] == [256, 512, 1024]
    assert rows[0]["observed_order"] is None
    assert all(r["observed_order"] >= 1.5 for r in rows[1:])
    code, out, _ = run(capsys, "convergence", SEC52, "--n-list", "128,256", "--format", "csv")
    assert out.splitlines()[0] == "n,residual_sup,observed_order,saturated"
    code, out, _ = run(capsys, "convergence", "x + I^{1} x = 1 + t", "--n-list", "64,128")
    assert code == EXIT_OK and "round-off level" in out
    assert run(capsys, "convergence", SEC52, "--n-list", "8,16")[0] == EXIT_PARSE
    assert run(capsys, "convergence", "I^{1} x = 1", "--n-list", "64")[0] == EXIT_NO_SOLUTION


def test_bad_arguments_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["solve"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["convergence", SEC52, "--n-list", "a,b"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fracreduce", "ml", "1", "2", "1"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert float(proc.stdout) == pytest.approx(np.e - 1, rel=1e-15)
