"""Closed-form eigen-solution chain of the twisted oscillator.

Energies are in units where the eigenparameter E carries the scale of
theta; B = 1/theta throughout. All "paper-mode" quantities follow the
published formulas verbatim; independent cross-checks live in
:mod:`twistmoyal.radial_oracle`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .checks import CheckResult, check
from .specfun import gamma_fn, gauss_laguerre, kummer_phi, pochhammer

__all__ = [
    "PolarReduction",
    "UnconstrainedError",
    "SpectrumEntry",
    "constraint_alpha",
    "polar_reduction",
    "twist_ratio",
    "ordinary_energies",
    "ordinary_k_condition",
    "quantized_k",
    "quantized_k_squared",
    "nu_branch",
    "twisted_energies",
    "kummer_parameters",
    "normalization_A1_squared",
    "normalization_A1",
    "eigenstate_eval",
    "inner_product",
    "figure_series",
    "FigureSeries",
]


class UnconstrainedError(ValueError):
    """omega_1 = omega_2 = 0: no angle constraint (ordinary Moyal case)."""


def constraint_alpha(omega1: float, omega2: float) -> float:
    """Angle with omega1 sin(alpha) + omega2 cos(alpha) = 0, principal value in (-pi/2, pi/2]."""
    if omega1 == 0 and omega2 == 0:
        raise UnconstrainedError("unconstrained (ordinary Moyal)")
    if omega1 == 0:
        return math.pi / 2
    return math.atan(-omega2 / omega1)


@dataclass(frozen=True)
class PolarReduction:
    alpha: float | None
    k: float
    unconstrained: bool = False

    def constraint_residual(self, omega1: float, omega2: float) -> float:
        if self.unconstrained:
            return 0.0
        return abs(omega1 * math.sin(self.alpha) + omega2 * math.cos(self.alpha))


def polar_reduction(omega1: float, omega2: float, k: float) -> PolarReduction:
    try:
        return PolarReduction(constraint_alpha(omega1, omega2), k)
    except UnconstrainedError:
        return PolarReduction(None, k, unconstrained=True)


def twist_ratio(omega1: float, omega2: float) -> float:
    """w = omega1 / cos(alpha) on the constraint; 0 when omega1 = 0."""
    if omega1 == 0:
        return 0.0
    return omega1 / math.cos(constraint_alpha(omega1, omega2))


def ordinary_energies(theta: float, k: float, l: int) -> tuple[float, float]:
    """(E+, E-) = theta (3/2 +- sqrt(1 + k^2/4) - l)."""
    if theta <= 0:
        raise ValueError("theta must be > 0")
    s = math.sqrt(1 + k * k / 4)
    return theta * (1.5 + s - l), theta * (1.5 - s - l)


def ordinary_k_condition(n: int, l: int, theta: float = 1.0) -> tuple[float, CheckResult]:
    """k = sqrt((n+l-1)^2 - 4) and a check of the claimed E+ = theta (n + 1/2)."""
    disc = (n + l - 1) ** 2 - 4
    if disc < 0:
        raise ValueError(f"(n+l-1)^2 < 4 for n={n}, l={l}")
    k = math.sqrt(disc)
    e_plus, _ = ordinary_energies(theta, k, l)
    claim = theta * (n + 0.5)
    return k, check(
        f"condit-energy[n={n},l={l}]", abs(e_plus - claim), 1e-12,
        note=f"E+ = {e_plus:.12g} vs theta(n+1/2) = {claim:.12g}", expect_discrepancy=True,
    )


def quantized_k_squared(p: int) -> int:
    return (p + 1) * (4 * p + 5)


def quantized_k(p: int, sign: int = 1) -> float:
    """k_p = +-sqrt((p+1)(4p+5))."""
    if p < 0:
        raise ValueError("p must be >= 0")
    return sign * math.sqrt(quantized_k_squared(p))


def nu_branch(k: float, branch: str = "plus") -> float:
    s = math.sqrt(1 + k * k / 4)
    if branch == "plus":
        return 1 + s
    if branch == "minus":
        return 1 - s
    raise ValueError("branch must be 'plus' or 'minus'")


def twisted_energies(theta: float, p: int, branch: str = "both"):
    """E_p^(+-) = theta (3/2 +- sqrt(1 + (p+1)(4p+5)/4) - p)."""
    if theta <= 0:
        raise ValueError("theta must be > 0")
    s = math.sqrt(1 + quantized_k_squared(p) / 4)
    plus, minus = theta * (1.5 + s - p), theta * (1.5 - s - p)
    if branch == "plus":
        return plus
    if branch == "minus":
        return minus
    return plus, minus


def kummer_parameters(theta: float, k: float, E: float, branch: str = "plus"):
    """(nu, B, a, b) with nu = 1 +- sqrt(1+k^2/4), a = E/theta - nu - 1/2, b = 2 nu + 1."""
    if theta <= 0:
        raise ValueError("theta must be > 0")
    nu = nu_branch(k, branch)
    return nu, 1 / theta, E / theta - nu - 0.5, 2 * nu + 1


def normalization_A1_squared(theta: float, p: int) -> float:
    """Published A_1^2 with the plus-branch nu_p."""
    nu = nu_branch(quantized_k(p), "plus")
    B = 1 / theta
    e = 2 * nu + 1.5
    num = 2.0 ** e * B ** e * pochhammer(2 * nu + 1, p) ** 2 * gamma_fn(2 * nu + 1)
    den = math.pi * math.factorial(p) * gamma_fn(2 * nu + p + 1) * gamma_fn(2 * nu + 1.5)
    return num / den


def normalization_A1(theta: float, p: int) -> float:
    if theta <= 0:
        raise ValueError("theta must be > 0")
    return math.sqrt(normalization_A1_squared(theta, p))


def eigenstate_eval(theta: float, p: int, r: float, alpha: float, sign: int = 1) -> complex:
    """f_p(r, alpha) = A1 r^{2 nu} e^{-B r^2} Phi(-p, 2nu+1; 2 B r^2) e^{i k_p alpha}."""
    k = quantized_k(p, sign)
    nu = nu_branch(k, "plus")
    B = 1 / theta
    radial = normalization_A1(theta, p) * r ** (2 * nu) * math.exp(-B * r * r) * kummer_phi(-p, 2 * nu + 1, 2 * B * r * r)
    return radial * cmath.exp(1j * k * alpha)


def _angular_overlap(kp: float, kq: float) -> complex:
    dk = kq - kp
    if dk == 0:
        return 2 * math.pi
    return (cmath.exp(1j * dk * 2 * math.pi) - 1) / (1j * dk)


def inner_product(theta: float, p: int, q: int, measure: str = "paper") -> complex:
    """<f_p, f_q> with r^2 dr dalpha ("paper") or r dr dalpha ("lebesgue").

    After z = 2 B r^2 the radial integral is sum-exact under a Gauss-Laguerre
    rule with weight exponent nu_p + nu_q + 1/2 (paper) or nu_p + nu_q
    (lebesgue).
    """
    if theta <= 0:
        raise ValueError("theta must be > 0")
    B = 1 / theta
    kp, kq = quantized_k(p), quantized_k(q)
    nup, nuq = nu_branch(kp), nu_branch(kq)
    if measure == "paper":
        extra = 1  # r^2 dr
    elif measure == "lebesgue":
        extra = 0.5  # r dr
    else:
        raise ValueError("measure must be 'paper' or 'lebesgue'")
    # r^{2nup+2nuq} r^{2 extra} dr = (2B)^{-(s+1/2)} z^{s} dz / 2 with s = nup+nuq+extra-1/2
    s = nup + nuq + extra - 0.5
    rule = gauss_laguerre(s, (p + q) // 2 + 8)
    poly = np.array([kummer_phi(-p, 2 * nup + 1, z) * kummer_phi(-q, 2 * nuq + 1, z) for z in rule.nodes])
    radial = math.fsum(rule.weights * poly) * (2 * B) ** (-(s + 1)) / 2
    return normalization_A1(theta, p) * normalization_A1(theta, q) * radial * _angular_overlap(kp, kq)


@dataclass(frozen=True)
class SpectrumEntry:
    p: int
    k_p: float
    nu_p: float
    nu_p_minus: float
    B: float
    kummer_a: float
    kummer_b: float
    E_plus: float
    E_minus: float
    A1: float


@dataclass(frozen=True)
class FigureSeries:
    theta: float
    rows: list
    e_plus_decreasing: bool
    e_minus_decreasing: bool
    e_minus_tail_slope: float


def spectrum_entry(theta: float, p: int) -> SpectrumEntry:
    k = quantized_k(p)
    e_plus, e_minus = twisted_energies(theta, p)
    nu, B, a, b = kummer_parameters(theta, k, e_plus, "plus")
    return SpectrumEntry(p, k, nu, nu_branch(k, "minus"), B, a, b, e_plus, e_minus, normalization_A1(theta, p))


def figure_series(theta: float, p_max: int, tail: tuple[int, int] = (10, 20)) -> FigureSeries:
    """Rows p = 0..p_max plus monotonicity flags and the E- tail slope.

    The slope is a least-squares line through the rows with p in ``tail``
    (clipped to the available range).
    """
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    rows = [spectrum_entry(theta, p) for p in range(p_max + 1)]
    ep = [r.E_plus for r in rows]
    em = [r.E_minus for r in rows]
    lo, hi = min(tail[0], p_max - 1), min(tail[1], p_max)
    ps = np.arange(lo, hi + 1)
    slope = float(np.polyfit(ps, np.array(em[lo:hi + 1]), 1)[0])
    return FigureSeries(
        theta,
        rows,
        all(a > b for a, b in zip(ep, ep[1:])),
        all(a > b for a, b in zip(em, em[1:])),
        slope,
    )


E_PLUS_ASYMPTOTE = Fraction(21, 8)
