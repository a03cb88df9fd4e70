"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 mode or
parameter error, 4 I/O error, 5 solver failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from fractions import Fraction

import numpy as np

from . import asympt, radial_oracle, recurrence, spectrum, verify
from .checks import FAIL
from .polyalg import CARTESIAN, LADDER, BasisMismatch, ModeMismatch, ParseError, parse_expression, render
from .starprod import StarMode, star_anticommutator, star_commutator, star_product

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_PARAM, EXIT_IO, EXIT_SOLVER = range(6)

DEFAULTS = {
    "theta": "1",
    "omega1": "0",
    "omega2": "0",
    "tol": "1e-9",
    "seed": "7",
    "out": None,
    "format": None,
    "pmax": "20",
}
GLOBAL_KEYS = tuple(DEFAULTS)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------- helpers

def fmt_float(x: float) -> str:
    """Stable decimal text: 10 places, no negative zero."""
    return repr(round(float(x), 10) + 0.0)


def _exact(text: str, key: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(EXIT_PARAM, f"--{key}: not a number: {text!r}") from None


def load_config(path: str) -> dict:
    """``key=value`` lines; ``#`` starts a comment; keys match the global flags."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read config {path}: {exc}") from None
    out = {}
    for no, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lstrip("-").replace("-", "")
        if not sep or key not in DEFAULTS:
            raise CliError(EXIT_PARAM, f"{path}:{no}: expected one of {', '.join(GLOBAL_KEYS)} as key=value")
        out[key] = value.strip()
    return out


def build_config(ns) -> verify.RunConfig:
    settings = dict(DEFAULTS)
    if getattr(ns, "config", None):
        settings.update(load_config(ns.config))
    for key in GLOBAL_KEYS:
        if getattr(ns, key, None) is not None:
            settings[key] = getattr(ns, key)
    theta = _exact(settings["theta"], "theta")
    if theta <= 0:
        raise CliError(EXIT_PARAM, "--theta must be > 0")
    try:
        tol = float(settings["tol"])
        seed = int(settings["seed"])
        pmax = int(settings["pmax"])
    except ValueError as exc:
        raise CliError(EXIT_PARAM, str(exc)) from None
    if not tol > 0:
        raise CliError(EXIT_PARAM, "--tol must be > 0")
    if seed < 0:
        raise CliError(EXIT_PARAM, "--seed must be unsigned")
    fmt = settings["format"]
    if fmt is not None and fmt not in ("csv", "json", "text"):
        raise CliError(EXIT_PARAM, f"--format must be csv, json or text, got {fmt!r}")
    return verify.RunConfig(theta, _exact(settings["omega1"], "omega1"), _exact(settings["omega2"], "omega2"),
                            seed, tol, pmax, settings["out"], fmt)


def write_atomic(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(data)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from None


def emit(cfg: verify.RunConfig, data: str) -> None:
    if cfg.out:
        write_atomic(cfg.out, data)
    else:
        sys.stdout.write(data)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def to_text(header, rows) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) + "\n" for row in cells)


def to_json(header, rows) -> str:
    return json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"


def table(cfg, header, rows, default="csv") -> str:
    fmt = cfg.fmt or default
    return {"csv": to_csv, "json": to_json, "text": to_text}[fmt](header, rows)


# ---------------------------------------------------------------- commands

_LADDER_VAR = re.compile(r"\b(a|abar)\b")


def cmd_star(cfg, ns) -> int:
    basis = ns.basis
    if basis == "auto":
        basis = LADDER if _LADDER_VAR.search(ns.lhs) or _LADDER_VAR.search(ns.rhs) else CARTESIAN
    polys = []
    for label, src in (("lhs", ns.lhs), ("rhs", ns.rhs)):
        try:
            polys.append(parse_expression(src, basis, "exact"))
        except ParseError as exc:
            raise CliError(EXIT_PARSE, f"{label}: parse error at offset {exc.offset}: {exc}") from None
    try:
        mode = StarMode(ns.mode)
        op = {"product": star_product, "commutator": star_commutator,
              "anticommutator": star_anticommutator}[ns.op]
        result = op(polys[0], polys[1], cfg.params(), mode)
    except (BasisMismatch, ModeMismatch, ValueError) as exc:
        raise CliError(EXIT_PARAM, str(exc)) from None
    text = render(result)
    if (cfg.fmt or "text") == "json":
        emit(cfg, json.dumps({"lhs": ns.lhs, "rhs": ns.rhs, "op": ns.op, "mode": mode.value,
                              "basis": basis, "result": text}, indent=2) + "\n")
    else:
        emit(cfg, text + "\n")
    return EXIT_OK


SPECTRUM_HEADER = ("p", "k_p", "nu_p", "E_plus", "E_minus", "A1")


def cmd_spectrum(cfg, ns) -> int:
    if cfg.p_max < 1:
        raise CliError(EXIT_PARAM, "--pmax must be >= 1")
    fs = spectrum.figure_series(float(cfg.theta), cfg.p_max)
    rows = [(r.p, fmt_float(r.k_p), fmt_float(r.nu_p), fmt_float(r.E_plus), fmt_float(r.E_minus), fmt_float(r.A1))
            for r in fs.rows]
    emit(cfg, table(cfg, SPECTRUM_HEADER, rows))
    line = (f"E_plus_decreasing={str(fs.e_plus_decreasing).lower()} "
            f"E_minus_tail_slope={fs.e_minus_tail_slope:.6f}\n")
    (sys.stdout if cfg.out else sys.stderr).write(line)
    return EXIT_OK


def cmd_eigenstate(cfg, ns) -> int:
    if ns.p < 0 or ns.nr < 2 or ns.nalpha < 1 or ns.rmax <= 0:
        raise CliError(EXIT_PARAM, "need p >= 0, nr >= 2, nalpha >= 1, rmax > 0")
    theta = float(cfg.theta)
    rows = []
    for r in np.linspace(0.0, ns.rmax, ns.nr):
        for j in range(ns.nalpha):
            alpha = 2 * math.pi * j / ns.nalpha
            v = spectrum.eigenstate_eval(theta, ns.p, float(r), alpha)
            rows.append((fmt_float(r), fmt_float(alpha), fmt_float(v.real), fmt_float(v.imag), fmt_float(abs(v))))
    emit(cfg, table(cfg, ("r", "alpha", "re", "im", "abs"), rows))
    return EXIT_OK


def cmd_oracle(cfg, ns) -> int:
    if ns.count < 1:
        raise CliError(EXIT_PARAM, "--count must be >= 1")
    theta = float(cfg.theta)
    k = float(_exact(ns.k, "k")) if "sqrt" not in ns.k else _sqrt_expr(ns.k)
    try:
        prob = radial_oracle.FDProblem(theta, k, ns.npoints)
        fd = radial_oracle.fd_eigenvalues(prob, ns.count)
        orders = [radial_oracle.convergence_order(radial_oracle.FDProblem(theta, k, ns.npoints // 4), n)
                  for n in range(ns.count)]
    except ValueError as exc:
        raise CliError(EXIT_PARAM, str(exc)) from None
    except (radial_oracle.SolverError, RuntimeError, np.linalg.LinAlgError) as exc:
        raise CliError(EXIT_SOLVER, str(exc)) from None
    rows = []
    for n, e in enumerate(fd):
        paper = spectrum.ordinary_energies(theta, k, n)[0]
        rows.append((n, fmt_float(e), fmt_float(radial_oracle.oracle_energy(theta, k, n)), fmt_float(paper),
                     fmt_float((paper - e) / e), f"{orders[n]:.3f}"))
    emit(cfg, table(cfg, ("n", "E_fd", "E_closed_form", "E_paper", "rel_diff_paper", "order"), rows, "text"))
    return EXIT_OK


def _sqrt_expr(text: str) -> float:
    m = re.fullmatch(r"\s*(?:([0-9.]+)\s*\*?\s*)?sqrt\(?\s*([0-9.]+)\s*\)?\s*", text)
    if not m:
        raise CliError(EXIT_PARAM, f"cannot read {text!r} as a number or c*sqrt(n)")
    return float(m.group(1) or 1) * math.sqrt(float(m.group(2)))


def _twist(cfg) -> float:
    # paper omega_1 is omega12^2 and omega_2 is omega12^1
    w1, w2 = float(cfg.omega12_2), float(cfg.omega12_1)
    if w1 == 0 and w2 == 0:
        return 0.0
    return spectrum.twist_ratio(w1, w2)


def cmd_recurrence(cfg, ns) -> int:
    if ns.discover is not None:
        rows = [(p, fmt_float(k)) for p, k in enumerate(recurrence.discover_kp(ns.discover))]
        emit(cfg, table(cfg, ("p", "k_p"), rows))
        return EXIT_OK
    theta = float(cfg.theta)
    E = spectrum.twisted_energies(theta, ns.p, "plus") if ns.energy is None else float(_exact(ns.energy, "energy"))
    w = _twist(cfg) if ns.w is None else float(_exact(ns.w, "w"))
    if ns.nmax < 2 or ns.nmax % 2:
        raise CliError(EXIT_PARAM, "--nmax must be even and >= 2")
    try:
        t = recurrence.series_consistency_report(theta, E, ns.p, ns.nmax, w)
    except recurrence.ResonanceError as exc:
        raise CliError(EXIT_SOLVER, str(exc)) from None
    full = recurrence.full_residuals(t)
    # gaps are indexed by the equation index n (the equation that yields a_{n+2})
    rows = []
    for n, a in enumerate(t.coeffs):
        gap = fmt_float(t.residuals[n // 2]) if n % 2 == 0 and n // 2 < len(t.residuals) else ""
        res = fmt_float(full[n]) if n < len(full) else ""
        rows.append((n, repr(float(a)), gap, res))
    emit(cfg, table(cfg, ("n", "a_n", "recc2_gap", "full_residual"), rows))
    return EXIT_OK


def cmd_asympt(cfg, ns) -> int:
    theta = float(cfg.theta)
    k = float(_exact(ns.k, "k")) if "sqrt" not in ns.k else _sqrt_expr(ns.k)
    E0 = float(_exact(ns.E0, "E0"))
    try:
        lam = asympt.lambda_solution(theta, k, E0)
    except asympt.EnergyAboveBound as exc:
        raise CliError(EXIT_PARAM, str(exc)) from None
    E_n, E_inf = asympt.energy_at_infinity(theta, k, ns.n, lam)
    reduced, shown, _ = asympt.eq81_n0_gap(theta, k)
    rows = [
        ("gamma", fmt_float(theta * theta * k * k / 4)),
        ("B", fmt_float(1 / theta)),
        ("lambda", fmt_float(lam)),
        ("lambda_quadratic_residual", fmt_float(asympt.lambda_quadratic_residual(theta, k, E0, lam))),
        ("energy_bound", fmt_float(asympt.energy_bound(theta, k))),
        (f"E_{ns.n}", fmt_float(E_n)),
        (f"E_{ns.n}_infinity", fmt_float(E_inf)),
        ("E_0_infinity_reduced", fmt_float(reduced)),
        ("E_0_infinity_displayed", fmt_float(shown)),
        ("residual_74", fmt_float(asympt.residual_74(theta, k, E0, ns.terms, lam))),
    ]
    emit(cfg, table(cfg, ("quantity", "value"), rows, "text"))
    return EXIT_OK


def cmd_verify(cfg, ns) -> int:
    results = verify.run_suite(ns.suite, cfg)
    rep = verify.report(results, cfg, ns.suite)
    out = cfg.out or "verify_report.json"
    fmt = cfg.fmt or "json"
    if fmt == "json":
        write_atomic(out, json.dumps(rep, indent=2) + "\n")
    else:
        rows = [(r.name, r.status, f"{r.residual:.3e}", f"{r.tolerance:.1e}", r.note) for r in results]
        write_atomic(out, table(cfg, ("name", "status", "residual", "tolerance", "note"), rows, fmt))
    counts = verify.summary(results)
    print(f"{ns.suite}: {counts['pass']} pass, {counts['fail']} fail, "
          f"{counts['discrepancy-documented']} discrepancy-documented -> {out}")
    for r in results:
        if r.status == FAIL:
            print(f"FAIL {r.name}: residual {r.residual:.3e} > {r.tolerance:.1e} ({r.note})")
    return EXIT_VERIFY if counts["fail"] else EXIT_OK


# ---------------------------------------------------------------- parser

def _add_globals(p: argparse.ArgumentParser) -> None:
    # defaults live in DEFAULTS so that config files only fill unset flags
    g = p.add_argument_group("global options")
    g.add_argument("--theta", default=argparse.SUPPRESS, help="noncommutativity theta > 0 (exact: 1/2, 0.5)")
    g.add_argument("--omega1", default=argparse.SUPPRESS, help="frame connection omega12^1")
    g.add_argument("--omega2", default=argparse.SUPPRESS, help="frame connection omega12^2")
    g.add_argument("--tol", default=argparse.SUPPRESS)
    g.add_argument("--seed", default=argparse.SUPPRESS)
    g.add_argument("--out", default=argparse.SUPPRESS, help="output file (written atomically)")
    g.add_argument("--format", default=argparse.SUPPRESS, choices=("csv", "json", "text"))
    g.add_argument("--pmax", default=argparse.SUPPRESS)
    g.add_argument("--config", default=argparse.SUPPRESS, help="file of key=value lines with the same keys")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistmoyal", description="Twisted Moyal oscillator toolkit")
    _add_globals(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("star", help="star product of two polynomial expressions")
    _add_globals(s)
    s.add_argument("lhs")
    s.add_argument("rhs")
    s.add_argument("--mode", default="determinant", choices=[m.value for m in StarMode])
    s.add_argument("--basis", default="auto", choices=("auto", CARTESIAN, LADDER))
    s.add_argument("--op", default="product", choices=("product", "commutator", "anticommutator"))
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("spectrum", help="energy table for p = 0..pmax")
    _add_globals(s)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("eigenstate", help="eigenstate on an (r, alpha) grid")
    _add_globals(s)
    s.add_argument("--p", type=int, default=0)
    s.add_argument("--rmax", type=float, default=4.0)
    s.add_argument("--nr", type=int, default=41)
    s.add_argument("--nalpha", type=int, default=1)
    s.set_defaults(func=cmd_eigenstate)

    s = sub.add_parser("oracle", help="finite-difference radial eigenvalues vs closed forms")
    _add_globals(s)
    s.add_argument("--k", default="0", help="angular number, e.g. 0, 2.5, sqrt(5), 3*sqrt(2)")
    s.add_argument("--count", type=int, default=4)
    s.add_argument("--npoints", type=int, default=4000)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("recurrence", help="series coefficients and split-recurrence gaps")
    _add_globals(s)
    s.add_argument("--p", type=int, default=0)
    s.add_argument("--energy", default=None, help="defaults to E_p^+")
    s.add_argument("--nmax", type=int, default=20)
    s.add_argument("--w", default=None, help="twist coefficient; defaults to the value implied by the omegas")
    s.add_argument("--discover", type=int, default=None, metavar="PMAX", help="list k_p for p <= PMAX")
    s.set_defaults(func=cmd_recurrence)

    s = sub.add_parser("asympt", help="large-rho quantities")
    _add_globals(s)
    s.add_argument("--k", default="0")
    s.add_argument("--E0", default="0")
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--terms", type=int, default=40)
    s.set_defaults(func=cmd_asympt)

    s = sub.add_parser("verify", help="run verification suites and write a JSON report")
    _add_globals(s)
    s.add_argument("--suite", default="all", choices=verify.SUITES + ("all",))
    s.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = build_config(ns)
        return ns.func(cfg, ns)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
