"""Twisted Moyal star product on polynomials.

Two readings of the product are implemented:

* ``StarMode.DETERMINANT``: the bidifferential exponential with constant
  symplectic legs, the n-th order term multiplied by ``(theta*einv/2)**n``
  after the pointwise merge. Truncates at ``min(deg f, deg g)``.
* ``StarMode.VIELBEIN``: ``exp(i/2 Theta^{ab} X_a (x) X_b)`` with the frame
  fields ``X_a = e_a^mu d_mu`` composed as genuine operators. Frame fields
  do not lower degree when omega != 0, so the series is cut at
  ``max_order``.

Both agree at first bidifferential order and for omega = 0.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .polyalg import CARTESIAN, LADDER, BasisMismatch, Polynomial2, change_basis, differentiate
from .scalars import QI2, to_exact

__all__ = [
    "DeformationParams",
    "StarMode",
    "star_product",
    "star_commutator",
    "star_anticommutator",
    "associator",
    "jacobi_residual",
    "jacobi_residuals",
    "VielbeinBracket",
    "vielbein_bracket",
    "frame_fields",
    "x_action_closed_form",
    "ladder_action_closed_form",
    "hamiltonian",
    "hamiltonian_action",
]


class StarMode(str, enum.Enum):
    DETERMINANT = "determinant"
    VIELBEIN = "vielbein"


@dataclass(frozen=True)
class DeformationParams:
    """theta > 0 and the two independent frame-connection components.

    ``omega12_1`` and ``omega12_2`` are the components of the skew tensor
    omega_{12}^mu (the oscillator equations call them omega_2 and omega_1).
    Values may be ints, Fractions or floats; exact-mode products convert
    floats bit-exactly.
    """

    theta: object = 1
    omega12_1: object = 0
    omega12_2: object = 0

    def __post_init__(self):
        if not self.theta > 0:
            raise ValueError(f"theta must be > 0, got {self.theta!r}")

    def scalar(self, name: str, mode: str):
        v = getattr(self, name)
        return to_exact(v) if mode == "exact" else complex(v)

    def einv(self, basis: str = CARTESIAN, mode: str = "exact") -> Polynomial2:
        """Vielbein determinant 1 + w1*x2 - w2*x1, in the requested basis."""
        w1, w2 = self.scalar("omega12_1", "exact"), self.scalar("omega12_2", "exact")
        p = Polynomial2({(0, 0): 1, (0, 1): w1, (1, 0): -w2}, CARTESIAN, "exact")
        if basis == LADDER:
            p = change_basis(p)
        return p if mode == "exact" else p.to_float()

    @property
    def omega(self) -> QI2:
        """(omega12_2 + i omega12_1)/sqrt2, exactly."""
        w1, w2 = to_exact(self.omega12_1), to_exact(self.omega12_2)
        return (w2 + QI2(0, 1) * w1) * QI2.from_parts(re2=Fraction(1, 2))

    @property
    def omega_bar(self) -> QI2:
        return self.omega.conjugate()

    def scaled(self, factor) -> "DeformationParams":
        return DeformationParams(self.theta, self.omega12_1 * factor, self.omega12_2 * factor)


def _check_pair(f: Polynomial2, g: Polynomial2):
    if f.basis != g.basis:
        raise BasisMismatch(f"{f.basis} vs {g.basis}")
    if f.mode != g.mode:
        raise ValueError(f"coefficient modes differ: {f.mode} vs {g.mode}")


def _unit(mode):
    return QI2(1) if mode == "exact" else 1 + 0j


def _star_determinant(f: Polynomial2, g: Polynomial2, d: DeformationParams) -> Polynomial2:
    mode, basis = f.mode, f.basis
    zero = Polynomial2._raw({}, basis, mode, f.prune)
    if f.is_zero() or g.is_zero():
        return zero
    theta = d.scalar("theta", mode)
    half = QI2.from_rational(Fraction(1, 2)) if mode == "exact" else 0.5
    if basis == CARTESIAN:
        lead = (QI2(0, 1) if mode == "exact" else 1j) * theta * half
    else:
        lead = theta * half
    einv = d.einv(basis, mode)
    top = min(f.degree, g.degree)

    df = {(0, 0): f}
    dg = {(0, 0): g}
    for i in range(top + 1):
        if i:
            df[(i, 0)] = differentiate(df[(i - 1, 0)], 0)
            dg[(i, 0)] = differentiate(dg[(i - 1, 0)], 0)
        for j in range(1, top + 1 - i):
            df[(i, j)] = differentiate(df[(i, j - 1)], 1)
            dg[(i, j)] = differentiate(dg[(i, j - 1)], 1)

    result = f * g
    prefactor = Polynomial2.constant(1, basis, mode)
    one = _unit(mode)
    for n in range(1, top + 1):
        prefactor = prefactor * einv
        bidiff = zero
        for k in range(n + 1):
            a, b = df[(k, n - k)], dg[(n - k, k)]
            if a.is_zero() or b.is_zero():
                continue
            w = one * Fraction((-1) ** (n - k), math.factorial(k) * math.factorial(n - k))
            bidiff = bidiff + (a * b).scale(w)
        if not bidiff.is_zero():
            result = result + (prefactor * bidiff).scale(lead ** n)
    return result


def frame_fields(d: DeformationParams, mode: str = "exact"):
    """Coefficient polynomials ``(e_a^1, e_a^2)`` of the frame fields X_1, X_2.

    ``e_a^mu = delta_a^mu + omega_{ab}^mu x^b`` with omega skew in (a, b).
    """
    w1 = to_exact(d.omega12_1)
    w2 = to_exact(d.omega12_2)
    X1 = (Polynomial2({(0, 0): 1, (0, 1): w1}), Polynomial2({(0, 1): w2}))
    X2 = (Polynomial2({(1, 0): -w1}), Polynomial2({(0, 0): 1, (1, 0): -w2}))
    if mode == "float":
        X1 = tuple(p.to_float() for p in X1)
        X2 = tuple(p.to_float() for p in X2)
    return X1, X2


def _apply_field_to_monomial(field, mono, mode):
    """X(x1^m x2^n) as dict monomial -> coefficient."""
    m, n = mono
    out = {}
    for var, coefpoly in enumerate(field):
        e = mono[var]
        if e == 0:
            continue
        base = (m - 1, n) if var == 0 else (m, n - 1)
        for (p, q), c in coefpoly._terms.items():
            k = (base[0] + p, base[1] + q)
            v = c * e
            out[k] = out[k] + v if k in out else v
    return out


def _star_vielbein(f: Polynomial2, g: Polynomial2, d: DeformationParams, max_order: int | None) -> Polynomial2:
    basis = f.basis
    if basis == LADDER:
        res = _star_vielbein(change_basis(f), change_basis(g), d, max_order)
        return change_basis(res)
    mode = f.mode
    zero = Polynomial2._raw({}, CARTESIAN, mode, f.prune)
    if f.is_zero() or g.is_zero():
        return zero
    if max_order is None:
        max_order = f.degree + g.degree
    X1, X2 = frame_fields(d, mode)
    theta = d.scalar("theta", mode)
    lead = (QI2(0, 1) * theta * Fraction(1, 2)) if mode == "exact" else 0.5j * theta
    prune = f.prune
    cache: dict = {}

    def act(field_idx, mono):
        key = (field_idx, mono)
        if key not in cache:
            cache[key] = _apply_field_to_monomial((X1, X2)[field_idx], mono, mode)
        return cache[key]

    tensor = {}
    for mf, cf in f._terms.items():
        for mg, cg in g._terms.items():
            tensor[(mf, mg)] = cf * cg

    def merge(t):
        out = {}
        for (mf, mg), c in t.items():
            k = (mf[0] + mg[0], mf[1] + mg[1])
            out[k] = out[k] + c if k in out else c
        return Polynomial2._raw(out, CARTESIAN, mode, prune)

    result = merge(tensor)
    for n in range(1, max_order + 1):
        new = {}
        # (X1 (x) X2 - X2 (x) X1) applied to every basis tensor
        for (mf, mg), c in tensor.items():
            for left, right, sign in ((0, 1, 1), (1, 0, -1)):
                lf = act(left, mf)
                if not lf:
                    continue
                rg = act(right, mg)
                for kf, vf in lf.items():
                    for kg, vg in rg.items():
                        key = (kf, kg)
                        v = c * vf * vg
                        if sign < 0:
                            v = -v
                        new[key] = new[key] + v if key in new else v
        if mode == "exact":
            tensor = {k: v for k, v in new.items() if not v.is_zero()}
        else:
            tensor = {k: v for k, v in new.items() if abs(v) >= prune * 1e-3}
        if not tensor:
            break
        coef = lead ** n * Fraction(1, math.factorial(n)) if mode == "exact" else lead ** n / math.factorial(n)
        result = result + merge(tensor).scale(coef)
    return result


def star_product(f: Polynomial2, g: Polynomial2, d: DeformationParams,
                 mode: StarMode | str = StarMode.DETERMINANT, max_order: int | None = None) -> Polynomial2:
    """``f * g`` in the twisted Moyal algebra.

    ``max_order`` only affects the vielbein reading (default
    ``deg f + deg g``); the determinant series is finite.
    """
    _check_pair(f, g)
    mode = StarMode(mode)
    if mode is StarMode.DETERMINANT:
        return _star_determinant(f, g, d)
    return _star_vielbein(f, g, d, max_order)


def star_commutator(f, g, d, mode=StarMode.DETERMINANT, **kw) -> Polynomial2:
    return star_product(f, g, d, mode, **kw) - star_product(g, f, d, mode, **kw)


def star_anticommutator(f, g, d, mode=StarMode.DETERMINANT, **kw) -> Polynomial2:
    return star_product(f, g, d, mode, **kw) + star_product(g, f, d, mode, **kw)


def associator(f, g, h, d, mode=StarMode.DETERMINANT, **kw) -> Polynomial2:
    """(f*g)*h - f*(g*h)."""
    fg = star_product(f, g, d, mode, **kw)
    gh = star_product(g, h, d, mode, **kw)
    return star_product(fg, h, d, mode, **kw) - star_product(f, gh, d, mode, **kw)


def _coord(mu: int, basis=CARTESIAN, num="exact") -> Polynomial2:
    return Polynomial2.variable(mu - 1, basis, num)


def jacobi_residual(d: DeformationParams, mode=StarMode.DETERMINANT,
                    triple: tuple[int, int, int] = (1, 1, 2), num: str = "exact") -> Polynomial2:
    """[x^mu,[x^nu,x^rho]] + [x^rho,[x^mu,x^nu]] + [x^nu,[x^rho,x^mu]] for one index triple."""
    mu, nu, rho = (_coord(i, CARTESIAN, num) for i in triple)

    def br(a, b):
        return star_commutator(a, b, d, mode)

    return br(mu, br(nu, rho)) + br(rho, br(mu, nu)) + br(nu, br(rho, mu))


def jacobi_residuals(d: DeformationParams, mode=StarMode.DETERMINANT, num="exact") -> dict:
    """Jacobi residual for every (mu, nu, rho) in {1,2}^3."""
    return {
        (a, b, c): jacobi_residual(d, mode, (a, b, c), num)
        for a in (1, 2) for b in (1, 2) for c in (1, 2)
    }


@dataclass(frozen=True)
class VielbeinBracket:
    """[X_1, X_2] = c^mu(x) d_mu.

    ``at_origin`` holds the constant parts of c^1, c^2, which carry the
    first-order structure coefficients; ``remainder`` is what is left
    once those are subtracted (quadratic in omega).
    """

    coefficients: tuple[Polynomial2, Polynomial2]
    at_origin: tuple[object, object]
    remainder: tuple[Polynomial2, Polynomial2]


def _apply_field(field, p: Polynomial2) -> Polynomial2:
    return field[0] * differentiate(p, 0) + field[1] * differentiate(p, 1)


def vielbein_bracket(d: DeformationParams, mode: str = "exact") -> VielbeinBracket:
    """Lie bracket of the frame fields, obtained by composing them.

    The composite X1 X2 - X2 X1 is applied to x1 and x2 to read off its
    first-order coefficients; :func:`bracket_on` checks the same operator
    on arbitrary test polynomials.
    """
    X1, X2 = frame_fields(d, mode)
    coeffs = []
    for mu in (0, 1):
        t = Polynomial2.variable(mu, CARTESIAN, mode)
        coeffs.append(_apply_field(X1, _apply_field(X2, t)) - _apply_field(X2, _apply_field(X1, t)))
    origin = tuple(c.coeff(0, 0) for c in coeffs)
    rem = tuple(c - Polynomial2.constant(o, CARTESIAN, mode) for c, o in zip(coeffs, origin))
    return VielbeinBracket(tuple(coeffs), origin, rem)


def bracket_on(d: DeformationParams, p: Polynomial2) -> tuple[Polynomial2, Polynomial2]:
    """(X1 X2 - X2 X1) p and c^mu d_mu p; equal for every p."""
    X1, X2 = frame_fields(d, p.mode)
    composed = _apply_field(X1, _apply_field(X2, p)) - _apply_field(X2, _apply_field(X1, p))
    br = vielbein_bracket(d, p.mode)
    first_order = br.coefficients[0] * differentiate(p, 0) + br.coefficients[1] * differentiate(p, 1)
    return composed, first_order


def x_action_closed_form(mu: int, f: Polynomial2, side: str, d: DeformationParams) -> Polynomial2:
    """x^mu * f (side="left") or f * x^mu (side="right") from the first-order formula."""
    if f.basis != CARTESIAN:
        raise BasisMismatch("closed form is stated in the cartesian basis")
    mode = f.mode
    theta = d.scalar("theta", mode)
    half_i = (QI2(0, 1) * Fraction(1, 2)) if mode == "exact" else 0.5j
    x = Polynomial2.variable(mu - 1, CARTESIAN, mode)
    einv = d.einv(CARTESIAN, mode)
    # x1 pairs with d_2 (+), x2 pairs with d_1 (-)
    other = 1 if mu == 1 else 0
    sign = 1 if mu == 1 else -1
    if side == "right":
        sign = -sign
    elif side != "left":
        raise ValueError("side must be 'left' or 'right'")
    corr = (einv * differentiate(f, other)).scale(half_i * theta * sign)
    return x * f + corr


def ladder_action_closed_form(which: str, f: Polynomial2, side: str, d: DeformationParams) -> Polynomial2:
    """a*f, abar*f, f*a, f*abar for ladder-basis f."""
    if f.basis != LADDER:
        raise BasisMismatch("ladder closed form needs a ladder-basis polynomial")
    mode = f.mode
    theta = d.scalar("theta", mode)
    half = Fraction(1, 2) if mode == "exact" else 0.5
    einv = d.einv(LADDER, mode)
    if which == "a":
        v, dvar, sign = Polynomial2.variable(0, LADDER, mode), 1, 1
    elif which == "abar":
        v, dvar, sign = Polynomial2.variable(1, LADDER, mode), 0, -1
    else:
        raise ValueError("which must be 'a' or 'abar'")
    if side == "right":
        sign = -sign
    return v * f + (einv * differentiate(f, dvar)).scale(theta * half * sign)


def hamiltonian(basis=CARTESIAN, mode="exact") -> Polynomial2:
    """H = ((x1)^2 + (x2)^2)/2 (equal to a*abar pointwise)."""
    h = Polynomial2({(2, 0): Fraction(1, 2), (0, 2): Fraction(1, 2)}, CARTESIAN, "exact")
    if basis == LADDER:
        h = change_basis(h)
    return h if mode == "exact" else h.to_float()


def hamiltonian_action(f: Polynomial2, side: str, d: DeformationParams, form: str = "engine") -> Polynomial2:
    """H*f (left) or f*H (right) as an explicit second-order differential operator.

    ``form="engine"`` is the operator the determinant product actually
    produces:  (1/2)[r^2 +- i theta e^{-1}(x1 d2 - x2 d1) - theta^2/4 e^{-2} Lap].
    ``form="paper"`` adds the published first-derivative shifts
    -+ theta^2/4 (omega12_1 d2 - omega12_2 d1), which the engine does not
    generate; the two agree at omega = 0.
    """
    if f.basis != CARTESIAN:
        raise BasisMismatch("hamiltonian_action works in the cartesian basis")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    mode = f.mode
    theta = d.scalar("theta", mode)
    w1, w2 = d.scalar("omega12_1", mode), d.scalar("omega12_2", mode)
    i = QI2(0, 1) if mode == "exact" else 1j
    half = Fraction(1, 2) if mode == "exact" else 0.5
    quarter = Fraction(1, 4) if mode == "exact" else 0.25
    einv = d.einv(CARTESIAN, mode)
    x1 = Polynomial2.variable(0, CARTESIAN, mode)
    x2 = Polynomial2.variable(1, CARTESIAN, mode)
    d1, d2 = differentiate(f, 0), differentiate(f, 1)
    lap = differentiate(f, 0, 2) + differentiate(f, 1, 2)
    sign = 1 if side == "left" else -1

    c2 = (einv * x1).scale(i * theta)   # coefficient of d2
    c1 = (einv * x2).scale(i * theta)   # coefficient of d1
    if form == "paper":
        c2 = c2 - Polynomial2.constant(theta * theta * quarter * w1, CARTESIAN, mode)
        c1 = c1 - Polynomial2.constant(theta * theta * quarter * w2, CARTESIAN, mode)
    elif form != "engine":
        raise ValueError("form must be 'engine' or 'paper'")
    body = (x1 * x1 + x2 * x2) * f + (c2 * d2 - c1 * d1).scale(sign) \
        - (einv * einv * lap).scale(theta * theta * quarter)
    return body.scale(half)
