"""Power-series solution of the linearised twisted radial equation.

chi(r) = sum a_n r^n with a_0 = 1 and all odd a_n = 0. The twist enters
only through w = omega_1 / cos(alpha).

With odd coefficients zero, the full six-term recurrence decouples by
parity of n: even n gives recc1, odd n gives w times recc2 (shifted by
one). A trace built from recc1 therefore satisfies the full recurrence
exactly at even n, and at odd n up to w times the recc2 gap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .specfun import pochhammer
from .spectrum import quantized_k

__all__ = [
    "ResonanceError",
    "SeriesTrace",
    "Step",
    "SplitResult",
    "rel_new_lhs",
    "full_recurrence_step",
    "build_trace",
    "split_recurrences",
    "split_equivalence_k_squared",
    "discover_kp",
    "series_consistency_report",
    "full_residuals",
    "b1_kummer_crosscheck",
]


class ResonanceError(ArithmeticError):
    """(n+2)^2 = k^2: the recurrence cannot be solved for a_{n+2}."""


@dataclass
class SeriesTrace:
    theta: float
    E: float
    k: float
    w: float = 0.0
    alpha: float | None = None
    coeffs: list = field(default_factory=lambda: [1.0, 0.0])
    residuals: list = field(default_factory=list)

    def a(self, n: int) -> float:
        if n < 0 or n >= len(self.coeffs):
            return 0.0
        return self.coeffs[n]

    @property
    def max_residual(self) -> float:
        return max((abs(r) for r in self.residuals), default=0.0)


@dataclass(frozen=True)
class Step:
    """One application of the full recurrence at index n.

    ``value`` is the new a_{n+2} (zero for odd n+2); ``implied`` is the
    even coefficient a_{n+1} that the odd-n equation would require, and
    ``residual`` the odd-n equation evaluated with a_{n+2} = 0.
    """

    n: int
    value: float
    implied: float | None = None
    residual: float = 0.0


def rel_new_lhs(t: SeriesTrace, n: int, a_next=None) -> float:
    """Left side of the full recurrence at index n (a_{n+2} overridable)."""
    th2 = t.theta ** 2
    a2 = t.a(n + 2) if a_next is None else a_next
    return (((n + 2) ** 2 - t.k ** 2) * a2 - t.w * (n + 1) * t.a(n + 1) + 8 * t.E / th2 * t.a(n)
            + 16 * t.E * t.w / th2 * t.a(n - 1) - 4 / th2 * t.a(n - 2) - 8 * t.w / th2 * t.a(n - 3))


def _resonant(n: int, k: float) -> bool:
    return abs((n + 2) ** 2 - k * k) <= 1e-12 * (n + 2) ** 2


def full_recurrence_step(t: SeriesTrace, n: int) -> Step:
    th2 = t.theta ** 2
    if n % 2 == 0:
        if _resonant(n, t.k):
            raise ResonanceError(f"(n+2)^2 = k^2 at n={n}, k={t.k}")
        rhs = -rel_new_lhs(t, n, a_next=0.0)
        return Step(n, rhs / ((n + 2) ** 2 - t.k ** 2))
    residual = rel_new_lhs(t, n, a_next=0.0)
    implied = (16 * t.E / th2 * t.a(n - 1) - 8 / th2 * t.a(n - 3)) / (n + 1)
    return Step(n, 0.0, implied, residual)


def build_trace(theta: float, E: float, k: float, n_max: int = 40, w: float = 0.0,
                alpha: float | None = None, a0: float = 1.0) -> SeriesTrace:
    """Coefficients a_0..a_{n_max} from the full recurrence with odd a_n forced to zero.

    ``residuals[j]`` is the odd-channel gap at n = 2j+1.
    """
    t = SeriesTrace(theta, E, k, w, alpha, [a0, 0.0], [])
    for n in range(0, n_max - 1):
        s = full_recurrence_step(t, n)
        t.coeffs.append(s.value)
        if n % 2:
            t.residuals.append(s.residual)
    return t


def split_equivalence_k_squared(n: int) -> Fraction:
    """k^2 at which recc1 and recc2 give the same a_{n+2}: (n+2)(2n+5)/2."""
    return Fraction((n + 2) * (2 * n + 5), 2)


@dataclass(frozen=True)
class SplitResult:
    n: int
    recc1: float
    recc2: float
    gap: float
    k_equivalence: float


def split_recurrences(t: SeriesTrace, n: int) -> SplitResult:
    """a_{n+2} from recc1 and from recc2 using the trace's a_n, a_{n-2}."""
    if n % 2:
        raise ValueError("split recurrences are indexed by even n")
    if _resonant(n, t.k):
        raise ResonanceError(f"(n+2)^2 = k^2 at n={n}, k={t.k}")
    th2 = t.theta ** 2
    v1 = (-8 * t.E / th2 * t.a(n) + 4 / th2 * t.a(n - 2)) / ((n + 2) ** 2 - t.k ** 2)
    v2 = (16 * t.E / th2 * t.a(n) - 8 / th2 * t.a(n - 2)) / (n + 2)
    return SplitResult(n, v1, v2, v1 - v2, math.sqrt(split_equivalence_k_squared(n)))


def discover_kp(p_max: int) -> list[float]:
    """Positive equivalence roots for n = 0, 2, ..., 2 p_max."""
    if p_max < 0:
        raise ValueError("p_max must be >= 0")
    return [math.sqrt(split_equivalence_k_squared(2 * p)) for p in range(p_max + 1)]


def series_consistency_report(theta: float, E: float, p: int, n_max: int = 40, w: float = 0.0) -> SeriesTrace:
    """recc1 coefficients at k = k_p, with the recc2 gap at every even n.

    ``residuals[j]`` belongs to n = 2j and is scaled by max(|a_{n+2}|, tiny).
    The entry at n = 2p vanishes by construction.
    """
    if n_max % 2:
        raise ValueError("n_max must be even")
    k = quantized_k(p)
    t = SeriesTrace(theta, E, k, w, None, [1.0, 0.0], [])
    th2 = theta ** 2
    for n in range(0, n_max - 1, 2):
        s = split_recurrences(t, n)
        t.coeffs.extend([s.recc1, 0.0])
        gap = -(n + 2) * s.recc1 + 16 * E / th2 * t.a(n) - 8 / th2 * t.a(n - 2)
        scale = max(abs((n + 2) * s.recc1), abs(16 * E / th2 * t.a(n)), abs(8 / th2 * t.a(n - 2)), 1e-300)
        t.residuals.append(gap / scale)
    del t.coeffs[n_max + 1:]
    return t


def full_residuals(t: SeriesTrace) -> list[float]:
    """Full-recurrence left side at every n whose a_{n+2} lies in the trace."""
    return [rel_new_lhs(t, n) for n in range(len(t.coeffs) - 2)]


def b1_kummer_crosscheck(theta: float, E: float, n_max: int = 20) -> float:
    """Max relative gap between recc1 at k = 0 and the Taylor series of
    e^{-B r^2} Phi(1/2 - E/theta, 1; 2 B r^2).

    The Kummer form is the regular k = 0 solution of the ordinary radial
    equation; its r^{2j} coefficients come from a Cauchy product.
    """
    B = 1 / theta
    a = 0.5 - E / theta
    m = n_max // 2 + 1
    gauss = np.array([(-B) ** j / math.factorial(j) for j in range(m)])
    kum = np.array([pochhammer(a, j) / (math.factorial(j) ** 2) * (2 * B) ** j for j in range(m)])
    oracle = np.convolve(gauss, kum)[:m]
    t = SeriesTrace(theta, E, 0.0, 0.0, None, [1.0, 0.0], [])
    th2 = theta ** 2
    for n in range(0, 2 * m - 2, 2):
        t.coeffs.extend([(-8 * E / th2 * t.a(n) + 4 / th2 * t.a(n - 2)) / ((n + 2) ** 2), 0.0])
    series = np.array(t.coeffs[0::2][:m])
    scale = np.maximum(np.abs(oracle), 1e-300)
    return float(np.max(np.abs(series - oracle) / np.maximum(scale, np.abs(series).max() * 1e-14)))
