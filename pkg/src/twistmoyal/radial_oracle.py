"""Finite-difference and Frobenius checks for the radial equations.

The ordinary radial equation is
    chi'' + chi'/r - k^2 chi/r^2 - (4/theta^2)(r^2 - 2E) chi = 0,
whose closed-form solutions r^|k| e^{-r^2/theta} L_n^{|k|}(2 r^2/theta) have
E = (theta/2)(2n + |k| + 1). The linearised twisted version adds the
coefficient w = omega_1/cos(alpha).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .checks import CheckResult, check
from .specfun import kummer_phi

__all__ = [
    "FDProblem",
    "RadialParams",
    "IndicialExponents",
    "indicial_exponents",
    "default_r_max",
    "fd_eigenvalues",
    "convergence_order",
    "oracle_energy",
    "oracle_radial_r",
    "oracle_radial_rho",
    "paper_radial_rho",
    "ode_residual",
    "SolverError",
]


class SolverError(RuntimeError):
    pass


def default_r_max(theta: float, k: float) -> float:
    return 8 * math.sqrt(theta) * max(1.0, math.sqrt(abs(k)))


@dataclass(frozen=True)
class FDProblem:
    theta: float
    k: float
    n_points: int = 2000
    r_max: float | None = None
    twist: float = 0.0

    def __post_init__(self):
        if self.theta <= 0:
            raise ValueError("theta must be > 0")
        if self.n_points < 200:
            raise ValueError("n_points must be >= 200")

    @property
    def radius(self) -> float:
        return self.r_max if self.r_max is not None else default_r_max(self.theta, self.k)


def _assemble(p: FDProblem):
    """Symmetrised tridiagonal (diag, off) and node radii.

    chi = r^kappa u turns the operator into the Sturm-Liouville form
    -(q u')'/q + V u = lam (1 + 2 w r) u with q = r^(2 kappa + 1) e^(-w r);
    cell-centred nodes put the regular end at the face r = 0 where q = 0.
    """
    kappa = abs(p.k)
    w = p.twist
    N = p.n_points
    h = p.radius / (N + 0.5)
    r = (np.arange(N) + 0.5) * h
    faces = np.arange(1, N + 1) * h  # r_{i+1/2}

    def logq(x):
        return (2 * kappa + 1) * np.log(x) - w * x

    lq = logq(r)
    lq_face = logq(faces)
    c = 4 / p.theta ** 2
    dens = 1 + 2 * w * r
    if np.any(dens <= 0):
        raise ValueError("twist too large: 1 + 2 w r must stay positive on the grid")
    V = w * kappa / r + c * dens * r * r
    # A = q-weighted stiffness; M = diag(q * dens); S = M^-1/2 A M^-1/2
    up = np.exp(lq_face - lq)  # q_{i+1/2}/q_i
    down = np.concatenate(([0.0], np.exp(lq_face[:-1] - lq[1:])))  # q_{i-1/2}/q_i
    diag = (up + down) / h ** 2 / dens + V / dens
    off = -np.exp(lq_face[:-1] - 0.5 * (lq[:-1] + lq[1:])) / h ** 2 / np.sqrt(dens[:-1] * dens[1:])
    return diag, off, r


def _tail_ok(p: FDProblem, E: float) -> bool:
    turning = 2 * max(E, 0.0)
    return (p.radius ** 2 - turning) / p.theta > 27.7  # e^{-27.7} ~ 1e-12


def fd_eigenvalues(p: FDProblem, count: int = 1) -> list[float]:
    """Lowest ``count`` eigenvalues E (second-order finite volumes)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    diag, off, _ = _assemble(p)
    try:
        lam = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, count - 1))
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise SolverError(str(exc)) from exc
    E = [float(x) * p.theta ** 2 / 8 for x in lam]
    if not _tail_ok(p, E[-1]):
        raise ValueError(f"r_max={p.radius:.4g} too small for E={E[-1]:.4g}")
    return E


def convergence_order(p: FDProblem, level: int = 0, exact: float | None = None) -> float:
    """Observed order from runs at N, 2N (and 4N when no exact value is given)."""
    def run(n):
        return fd_eigenvalues(FDProblem(p.theta, p.k, n, p.r_max, p.twist), level + 1)[level]

    e1, e2 = run(p.n_points), run(2 * p.n_points)
    if exact is not None:
        return math.log2(abs(e1 - exact) / abs(e2 - exact))
    e4 = run(4 * p.n_points)
    return math.log2(abs(e1 - e2) / abs(e2 - e4))


def oracle_energy(theta: float, k: float, n: int) -> float:
    return theta / 2 * (2 * n + abs(k) + 1)


def oracle_radial_r(theta: float, k: float, n: int):
    """r^|k| e^{-r^2/theta} Phi(-n, |k|+1; 2 r^2/theta) as a vectorised callable."""
    kap = abs(k)

    def chi(r):
        r = np.asarray(r, dtype=float)
        z = 2 * r * r / theta
        phi = np.array([kummer_phi(-n, kap + 1, float(x)) for x in np.ravel(z)]).reshape(z.shape)
        return r ** kap * np.exp(-r * r / theta) * phi
    return chi


def oracle_radial_rho(theta: float, k: float, n: int):
    """Same solution in rho = r^2: rho^{|k|/2} e^{-rho/theta} Phi(-n, |k|+1; 2 rho/theta)."""
    f = oracle_radial_r(theta, k, n)
    return lambda rho: f(np.sqrt(np.asarray(rho, dtype=float)))


def paper_radial_rho(theta: float, k: float, E: float, branch: str = "plus"):
    """rho^nu e^{-B rho} Phi(a, b; 2 B rho) with the published nu, a, b."""
    from .spectrum import kummer_parameters
    nu, B, a, b = kummer_parameters(theta, k, E, branch)

    def chi(rho):
        rho = np.asarray(rho, dtype=float)
        phi = np.array([kummer_phi(a, b, 2 * B * float(x)) for x in np.ravel(rho)]).reshape(rho.shape)
        return rho ** nu * np.exp(-B * rho) * phi
    return chi


@dataclass(frozen=True)
class IndicialExponents:
    frobenius: tuple[float, float]
    paper: tuple[float, float]
    check: CheckResult


def indicial_exponents(k: float, tol: float = 1e-12) -> IndicialExponents:
    """Roots of nu^2 - k^2/4 (from rho^nu in the rho-form equation) vs 1 +- sqrt(1 + k^2/4)."""
    fro = (abs(k) / 2, -abs(k) / 2)
    s = math.sqrt(1 + k * k / 4)
    pap = (1 + s, 1 - s)
    gap = max(abs(fro[0] - pap[0]), abs(fro[1] - pap[1]))
    return IndicialExponents(fro, pap, check(
        f"indicial-exponents[k={k:.6g}]", gap, tol,
        note=f"Frobenius {fro[0]:.6g},{fro[1]:.6g} vs published {pap[0]:.6g},{pap[1]:.6g}",
        expect_discrepancy=True))


@dataclass(frozen=True)
class RadialParams:
    theta: float
    k: float
    E: float
    w: float = 0.0


_DEFAULT_GRID = {"equ11prime": (0.2, 5.0), "new1": (0.2, 5.0), "sing": (0.25, 12.0)}


def ode_residual(solution, equation: str, params: RadialParams, grid=None, h: float | None = None,
                 normalize: str | None = "terms") -> float:
    """Max interior residual with 5-point stencils.

    ``grid`` is ``(lo, hi)``; the solution is sampled with spacing ``h`` and
    stencils are applied on interior points. Defaults scale with theta (the
    equations are invariant under r -> sqrt(theta) r). ``normalize="terms"`` divides by
    the largest sum of term moduli (a relative residual, insensitive to the
    size of the coefficients), ``"solution"`` by max|chi|, ``None`` not at all.
    """
    if equation not in _DEFAULT_GRID:
        raise ValueError(f"unknown equation {equation!r}")
    if normalize not in ("terms", "solution", None):
        raise ValueError(f"unknown normalisation {normalize!r}")
    scale = params.theta if equation == "sing" else math.sqrt(params.theta)
    if grid is None:
        lo, hi = (scale * g for g in _DEFAULT_GRID[equation])
    else:
        lo, hi = grid
    if h is None:
        h = 2e-3 * scale
    x = np.arange(lo - 2 * h, hi + 2 * h + h / 2, h)
    f = np.asarray(solution(x))
    d1 = (-f[4:] + 8 * f[3:-1] - 8 * f[1:-3] + f[:-4]) / (12 * h)
    d2 = (-f[4:] + 16 * f[3:-1] - 30 * f[2:-2] + 16 * f[1:-3] - f[:-4]) / (12 * h * h)
    y = f[2:-2]
    t = x[2:-2]
    th, k, E, w = params.theta, params.k, params.E, params.w
    if equation == "equ11prime":
        terms = (d2, d1 / t, -k * k * y / t ** 2, -4 / th ** 2 * (t * t - 2 * E) * y)
    elif equation == "sing":
        terms = (t * t * d2, t * d1, -(t * t - 2 * E * t + th * th * k * k / 4) * y / th ** 2)
    else:
        terms = (d2, (1 - w * t) * d1 / t, -k * k * y / t ** 2,
                 -4 / th ** 2 * (1 + 2 * w * t) * (t * t - 2 * E) * y)
    res = float(np.max(np.abs(sum(terms))))
    if normalize == "terms":
        return res / float(np.max(sum(np.abs(u) for u in terms)))
    if normalize == "solution":
        return res / float(np.max(np.abs(y)))
    return res
