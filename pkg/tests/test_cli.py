import json
import math
import os

import pytest

from twistmoyal import verify
from twistmoyal.checks import DISCREPANCY, FAIL, PASS, CheckResult, check
from twistmoyal.cli import (
    EXIT_IO,
    EXIT_OK,
    EXIT_PARAM,
    EXIT_PARSE,
    EXIT_SOLVER,
    fmt_float,
    load_config,
    main,
)


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


# --- star ------------------------------------------------------------------

def test_star_product(capsys):
    assert run(capsys, "star", "x1", "x2") == (EXIT_OK, "x1*x2 + 1/2*i\n", "")
    rc, out, _ = run(capsys, "star", "x1", "x2", "--omega1", "0.1")
    assert out == "x1*x2 + 1/20*i*x2 + 1/2*i\n"


def test_star_ladder_and_ops(capsys):
    rc, out, _ = run(capsys, "star", "a", "abar", "--op", "commutator")
    assert (rc, out) == (EXIT_OK, "1\n")
    rc, out, _ = run(capsys, "star", "x1", "x1^2", "--op", "anticommutator", "--omega1", "1/3")
    assert out == "2*x1^3\n"
    rc, out, _ = run(capsys, "star", "x1", "x2", "--format", "json")
    assert json.loads(out)["result"] == "x1*x2 + 1/2*i"


def test_star_parse_error_reports_offset(capsys):
    rc, _, err = run(capsys, "star", "x1 + $", "x2")
    assert rc == EXIT_PARSE
    assert "offset 5" in err


def test_star_basis_mismatch_is_a_parse_error(capsys):
    rc, _, err = run(capsys, "star", "x1", "a", "--basis", "cartesian")
    assert rc == EXIT_PARSE


@pytest.mark.parametrize("argv", [
    ("star", "x1", "x2", "--theta", "0"),
    ("star", "x1", "x2", "--theta", "abc"),
    ("spectrum", "--pmax", "0"),
    ("spectrum", "--tol", "-1"),
    ("asympt", "--E0", "100"),
    ("oracle", "--count", "0"),
    ("recurrence", "--nmax", "7"),
])
def test_parameter_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_PARAM


def test_solver_failure_exit_code(capsys, monkeypatch):
    from twistmoyal import radial_oracle

    def broken(*args, **kw):
        raise radial_oracle.SolverError("no convergence")

    monkeypatch.setattr(radial_oracle, "fd_eigenvalues", broken)
    rc, _, err = run(capsys, "oracle", "--count", "1")
    assert rc == EXIT_SOLVER
    assert "no convergence" in err


def test_unwritable_output_is_an_io_error(capsys, tmp_path):
    target = tmp_path / "missing" / "out.csv"
    assert run(capsys, "spectrum", "--out", str(target))[0] == EXIT_IO
    assert not target.exists()


# --- spectrum ----------------------------------------------------------------

def test_spectrum_is_byte_stable(capsys, tmp_path):
    paths = [tmp_path / f"s{j}.csv" for j in range(2)]
    for p in paths:
        rc, out, _ = run(capsys, "spectrum", "--theta", "1", "--pmax", "20", "--out", str(p))
        assert rc == EXIT_OK
        assert out == "E_plus_decreasing=true E_minus_tail_slope=-1.997973\n"
    a, b = (p.read_bytes() for p in paths)
    assert a == b
    lines = a.decode().splitlines()
    assert lines[0] == "p,k_p,nu_p,E_plus,E_minus,A1"
    assert lines[1] == "0,2.2360679775,2.5,3.0,0.0,0.3163463453"
    assert len(lines) == 22
    assert not [f for f in os.listdir(tmp_path) if f.startswith(".tmp-")]


def test_spectrum_formats(capsys):
    rc, out, err = run(capsys, "spectrum", "--pmax", "3", "--format", "json")
    rows = json.loads(out)
    assert [r["p"] for r in rows] == [0, 1, 2, 3]
    assert "E_plus_decreasing=true" in err
    rc, out, _ = run(capsys, "spectrum", "--pmax", "3", "--format", "text")
    assert out.split("\n")[0].split() == ["p", "k_p", "nu_p", "E_plus", "E_minus", "A1"]


def test_fmt_float_has_no_negative_zero():
    assert fmt_float(-0.0) == "0.0"
    assert fmt_float(-1e-12) == "0.0"
    assert fmt_float(1 / 3) == "0.3333333333"


# --- other commands ------------------------------------------------------------

def test_oracle_table(capsys):
    rc, out, _ = run(capsys, "oracle", "--theta", "2", "--k", "0", "--count", "2", "--npoints", "2000", "--format", "csv")
    assert rc == EXIT_OK
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["n", "E_fd", "E_closed_form", "E_paper", "rel_diff_paper", "order"]
    assert float(rows[1][1]) == pytest.approx(1.0, abs=1e-5)
    assert float(rows[2][2]) == 3.0
    assert abs(float(rows[1][5]) - 2) < 0.3


def test_oracle_accepts_sqrt_forms(capsys):
    rc, out, _ = run(capsys, "oracle", "--k", "3*sqrt(2)", "--count", "1", "--npoints", "1000", "--format", "csv")
    assert rc == EXIT_OK
    assert out.splitlines()[1].split(",")[2] == fmt_float(0.5 * (3 * 2 ** 0.5 + 1))


def test_recurrence_table(capsys):
    rc, out, _ = run(capsys, "recurrence", "--p", "1", "--nmax", "8")
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert rows[0] == ["n", "a_n", "recc2_gap", "full_residual"]
    assert rows[3][0] == "2" and rows[3][2] == "0.0"  # the n = 2p gap vanishes
    rc, out, _ = run(capsys, "recurrence", "--discover", "2")
    assert out.splitlines()[1:] == ["0,2.2360679775", "1,4.2426406871", "2,6.2449979984"]


def test_asympt_table(capsys):
    rc, out, _ = run(capsys, "asympt", "--k", "sqrt(5)", "--format", "csv")
    values = dict(line.split(",") for line in out.strip().splitlines()[1:])
    assert float(values["E_0_infinity_reduced"]) == pytest.approx(5 * math.pi / 64, abs=1e-9)
    assert float(values["E_0_infinity_displayed"]) == pytest.approx(5 * math.sqrt(math.pi) / 32, abs=1e-9)


def test_eigenstate_grid(capsys):
    rc, out, _ = run(capsys, "eigenstate", "--p", "0", "--nr", "3", "--nalpha", "2", "--rmax", "2")
    rows = out.strip().splitlines()
    assert rows[0] == "r,alpha,re,im,abs"
    assert len(rows) == 7
    assert rows[1].startswith("0.0,0.0,0.0,0.0,0.0")


# --- config and verify ---------------------------------------------------------

def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# exact theta\ntheta = 1/2\nomega1=0.1\n")
    assert load_config(str(cfg)) == {"theta": "1/2", "omega1": "0.1"}
    rc, out, _ = run(capsys, "star", "x1", "x2", "--config", str(cfg))
    assert out == "x1*x2 + 1/40*i*x2 + 1/4*i\n"
    # explicit flags win over the file
    rc, out, _ = run(capsys, "star", "x1", "x2", "--config", str(cfg), "--theta", "1")
    assert out == "x1*x2 + 1/20*i*x2 + 1/2*i\n"


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour=blue\n")
    assert run(capsys, "spectrum", "--config", str(cfg))[0] == EXIT_PARAM
    assert run(capsys, "spectrum", "--config", str(tmp_path / "nope.cfg"))[0] == EXIT_IO


def test_verify_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    rc, stdout, _ = run(capsys, "verify", "--suite", "asympt", "--out", str(out))
    assert rc == EXIT_OK
    assert stdout.startswith("asympt: ")
    rep = json.loads(out.read_text())
    assert rep["config"]["suite"] == "asympt"
    assert {c["status"] for c in rep["checks"]} <= {PASS, DISCREPANCY}
    first = out.read_bytes()
    run(capsys, "verify", "--suite", "asympt", "--out", str(out))
    assert out.read_bytes() == first


def test_suite_results_do_not_depend_on_grouping():
    cfg = verify.RunConfig(seed=11)
    alone = verify.run_suite("star", cfg)
    together = [r for r in verify.run_suite("all", cfg) if r.name in {x.name for x in alone}]
    assert alone == together


def test_crashing_check_is_reported_as_fail(monkeypatch):
    def boom(cfg, rng):
        raise ZeroDivisionError("synthetic")

    monkeypatch.setitem(verify.REGISTRY, "asympt", [("synthetic-crash", boom)])
    (res,) = verify.run_suite("asympt")
    assert res.status == FAIL and "ZeroDivisionError" in res.note


def test_check_result_consistency():
    assert check("x", 1e-3, 1e-2).status == PASS
    assert check("x", 1.0, 1e-2).status == FAIL
    assert check("x", 1.0, 1e-2, expect_discrepancy=True).status == DISCREPANCY
    assert check("x", float("nan"), 1.0).status == FAIL
    with pytest.raises(ValueError):
        CheckResult("x", 1.0, 1e-2, PASS)
    with pytest.raises(ValueError):
        check("x", 0.0, 0.0)
