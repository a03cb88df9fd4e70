"""Sparse bivariate polynomials over C, exact (Q(i, sqrt2)) or float.

Two bases are supported: ``cartesian`` with variables ``x1, x2`` and
``ladder`` with ``a = (x1 + i x2)/sqrt2`` and ``abar = (x1 - i x2)/sqrt2``.
Values are immutable; every operation returns a new canonical polynomial.
"""
from __future__ import annotations

import math
import re
from decimal import Decimal
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .scalars import QI2, to_exact

__all__ = [
    "Polynomial2",
    "ParseError",
    "BasisMismatch",
    "ModeMismatch",
    "CARTESIAN",
    "LADDER",
    "VARIABLES",
    "DEFAULT_PRUNE",
    "parse_expression",
    "render",
    "add",
    "subtract",
    "multiply",
    "scalar_multiply",
    "negate",
    "differentiate",
    "evaluate",
    "change_basis",
]

CARTESIAN = "cartesian"
LADDER = "ladder"
VARIABLES = {CARTESIAN: ("x1", "x2"), LADDER: ("a", "abar")}
DEFAULT_PRUNE = 1e-14

Exponent = tuple[int, int]


class BasisMismatch(ValueError):
    pass


class ModeMismatch(ValueError):
    pass


def _coef(x, mode: str):
    if mode == "exact":
        if isinstance(x, float) or (isinstance(x, complex)):
            raise ModeMismatch(f"float scalar {x!r} in exact-mode polynomial")
        return to_exact(x)
    if isinstance(x, QI2):
        return complex(x)
    return complex(x)


class Polynomial2:
    """Finite map ``(m, n) -> coefficient`` meaning ``sum c * v1**m * v2**n``.

    ``mode`` is ``"exact"`` (coefficients are :class:`QI2`) or ``"float"``
    (Python ``complex``); in float mode coefficients with modulus below
    ``prune`` are dropped.
    """

    __slots__ = ("_terms", "basis", "mode", "prune")

    def __init__(self, terms: Mapping[Exponent, object] | None = None,
                 basis: str = CARTESIAN, mode: str = "exact", prune: float = DEFAULT_PRUNE):
        if basis not in VARIABLES:
            raise ValueError(f"unknown basis {basis!r}")
        if mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {mode!r}")
        clean: dict[Exponent, object] = {}
        for (m, n), c in (terms or {}).items():
            if m < 0 or n < 0:
                raise ValueError(f"negative exponent {(m, n)}")
            c = _coef(c, mode)
            if mode == "exact":
                if not c.is_zero():
                    clean[(m, n)] = c
            elif abs(c) >= prune:
                clean[(m, n)] = c
        self._terms = clean
        self.basis = basis
        self.mode = mode
        self.prune = prune

    @classmethod
    def _raw(cls, terms: dict, basis: str, mode: str, prune: float) -> "Polynomial2":
        # trusted constructor: terms already coerced, zeros still to prune
        p = object.__new__(cls)
        if mode == "exact":
            p._terms = {k: v for k, v in terms.items() if not v.is_zero()}
        else:
            p._terms = {k: v for k, v in terms.items() if abs(v) >= prune}
        p.basis, p.mode, p.prune = basis, mode, prune
        return p

    # --- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, basis=CARTESIAN, mode="exact") -> "Polynomial2":
        return cls({}, basis, mode)

    @classmethod
    def constant(cls, c, basis=CARTESIAN, mode="exact") -> "Polynomial2":
        return cls({(0, 0): c}, basis, mode)

    @classmethod
    def variable(cls, index: int, basis=CARTESIAN, mode="exact") -> "Polynomial2":
        return cls({(1, 0) if index == 0 else (0, 1): 1}, basis, mode)

    def _like(self, terms: dict) -> "Polynomial2":
        return Polynomial2._raw(terms, self.basis, self.mode, self.prune)

    # --- views -----------------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, object]:
        return MappingProxyType(self._terms)

    def coeff(self, m: int, n: int):
        return self._terms.get((m, n), 0 if self.mode == "exact" else 0j)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m + n for m, n in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def norm(self) -> float:
        """Max absolute coefficient."""
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def to_float(self, prune: float | None = None) -> "Polynomial2":
        prune = self.prune if prune is None else prune
        return Polynomial2({k: complex(v) for k, v in self._terms.items()}, self.basis, "float", prune)

    def to_exact(self) -> "Polynomial2":
        return Polynomial2({k: to_exact(v) for k, v in self._terms.items()}, self.basis, "exact")

    # --- ring operations -------------------------------------------------
    def _check(self, other: "Polynomial2"):
        if other.basis != self.basis:
            raise BasisMismatch(f"{self.basis} vs {other.basis}")
        if other.mode != self.mode:
            raise ModeMismatch(f"{self.mode} vs {other.mode}")

    def _lift(self, other) -> "Polynomial2":
        if isinstance(other, Polynomial2):
            self._check(other)
            return other
        return Polynomial2.constant(other, self.basis, self.mode)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out[k] + v if k in out else v
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial2):
            return self.scale(other)
        self._check(other)
        out: dict[Exponent, object] = {}
        for (m1, n1), c1 in self._terms.items():
            for (m2, n2), c2 in other._terms.items():
                k = (m1 + m2, n1 + n2)
                if k in out:
                    out[k] = out[k] + c1 * c2
                else:
                    out[k] = c1 * c2
        return self._like(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial2":
        c = _coef(c, self.mode)
        return self._like({k: c * v for k, v in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power must be a non-negative integer")
        result = Polynomial2.constant(1, self.basis, self.mode)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial2):
            return (self.basis, self.mode) == (other.basis, other.mode) and self._terms == other._terms
        if self.mode == "exact" and isinstance(other, (int, Fraction, QI2)):
            return self == Polynomial2.constant(other, self.basis, self.mode)
        return NotImplemented

    def __hash__(self):
        return hash((self.basis, self.mode, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Polynomial2({render(self)!r}, basis={self.basis!r}, mode={self.mode!r})"

    def __str__(self):
        return render(self)

    # --- calculus --------------------------------------------------------
    def differentiate(self, var: int, order: int = 1) -> "Polynomial2":
        return differentiate(self, var, order)

    def __call__(self, z1, z2):
        return evaluate(self, (z1, z2))


# --- functional ring_ops family --------------------------------------------

def add(p: Polynomial2, q: Polynomial2) -> Polynomial2:
    return p + q


def subtract(p: Polynomial2, q: Polynomial2) -> Polynomial2:
    return p - q


def multiply(p: Polynomial2, q: Polynomial2) -> Polynomial2:
    return p * q


def scalar_multiply(c, p: Polynomial2) -> Polynomial2:
    return p.scale(c)


def negate(p: Polynomial2) -> Polynomial2:
    return -p


def differentiate(p: Polynomial2, var: int, order: int = 1) -> Polynomial2:
    """Formal partial derivative in variable ``var`` (0 or 1), ``order`` times."""
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    if order == 0:
        return p
    out = {}
    for (m, n), c in p._terms.items():
        e = m if var == 0 else n
        if e < order:
            continue
        f = math.perm(e, order)
        k = (m - order, n) if var == 0 else (m, n - order)
        out[k] = c * f
    return p._like(out)


def evaluate(p: Polynomial2, point):
    """Value of ``p`` at ``point = (z1, z2)``.

    Exact polynomials evaluated at exact points (ints, Fractions, QI2) give an
    exact QI2; anything else gives a Python complex.
    """
    z1, z2 = point
    exact = p.mode == "exact" and all(isinstance(z, (int, Fraction, QI2)) for z in (z1, z2))
    if exact:
        z1, z2 = to_exact(z1), to_exact(z2)
        total = QI2(0)
    else:
        z1, z2 = complex(z1), complex(z2)
        total = 0j
    if not p._terms:
        return total
    dm = max(m for m, _ in p._terms)
    dn = max(n for _, n in p._terms)
    one = QI2(1) if exact else 1 + 0j
    pw1, pw2 = [one], [one]
    for _ in range(dm):
        pw1.append(pw1[-1] * z1)
    for _ in range(dn):
        pw2.append(pw2[-1] * z2)
    if exact:
        for (m, n), c in p._terms.items():
            total = total + c * pw1[m] * pw2[n]
        return total
    return sum((complex(c) * pw1[m] * pw2[n] for (m, n), c in p._terms.items()), 0j)


def _images(source: str):
    h = QI2.from_parts(re2=Fraction(1, 2))  # 1/sqrt2
    ih = QI2.from_parts(im2=Fraction(1, 2))  # i/sqrt2
    if source == CARTESIAN:
        target = LADDER
        x1 = {(1, 0): h, (0, 1): h}
        x2 = {(1, 0): -ih, (0, 1): ih}
    else:
        target = CARTESIAN
        x1 = {(1, 0): h, (0, 1): ih}
        x2 = {(1, 0): h, (0, 1): -ih}
    return target, Polynomial2(x1, target, "exact"), Polynomial2(x2, target, "exact")


def change_basis(p: Polynomial2) -> Polynomial2:
    """Rewrite ``p`` in the other basis (cartesian <-> ladder)."""
    target, v1, v2 = _images(p.basis)
    if p.mode == "float":
        v1, v2 = v1.to_float(p.prune), v2.to_float(p.prune)
    result = Polynomial2.zero(target, p.mode)
    if p.mode == "float":
        result = result.to_float(p.prune)
    if not p._terms:
        return result
    dm = max(m for m, _ in p._terms)
    dn = max(n for _, n in p._terms)
    one = Polynomial2.constant(1, target, p.mode)
    if p.mode == "float":
        one = one.to_float(p.prune)
    pw1, pw2 = [one], [one]
    for _ in range(dm):
        pw1.append(pw1[-1] * v1)
    for _ in range(dn):
        pw2.append(pw2[-1] * v2)
    acc: dict[Exponent, object] = {}
    for (m, n), c in p._terms.items():
        for k, v in (pw1[m] * pw2[n])._terms.items():
            acc[k] = acc[k] + c * v if k in acc else c * v
    return Polynomial2._raw(acc, target, p.mode, p.prune)


# --- rendering -------------------------------------------------------------

def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_float(x: float) -> str:
    s = format(Decimal(repr(x)), "f")
    if "." not in s:
        s += ".0"
    return s


def _coef_atoms(c, mode: str) -> list[tuple[str, bool]]:
    """Signed atoms of a coefficient as (magnitude-string-with-unit, negative)."""
    atoms = []
    if mode == "exact":
        (ra, ia), (rc, ic) = c.rational_part, c.sqrt2_part
        for q, unit in ((ra, ""), (ia, "i"), (rc, "sqrt2"), (ic, "i*sqrt2")):
            if q:
                mag = _fmt_q(abs(q))
                if unit:
                    mag = unit if mag == "1" else f"{mag}*{unit}"
                atoms.append((mag, q < 0))
    else:
        for x, unit in ((c.real, ""), (c.imag, "i")):
            if x:
                mag = _fmt_float(abs(x))
                if unit:
                    mag = f"{mag}*{unit}"
                atoms.append((mag, x < 0))
    return atoms


def _join(atoms: list[tuple[str, bool]]) -> str:
    out = ("-" if atoms[0][1] else "") + atoms[0][0]
    for mag, neg in atoms[1:]:
        out += (" - " if neg else " + ") + mag
    return out


def render(p: Polynomial2) -> str:
    """Canonical text form, parseable by :func:`parse_expression`.

    Terms run from highest total degree down; ties broken by descending
    exponent of the first variable.
    """
    if not p._terms:
        return "0"
    v1, v2 = VARIABLES[p.basis]
    pieces: list[tuple[str, bool]] = []
    for (m, n) in sorted(p._terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
        mono = []
        if m:
            mono.append(v1 if m == 1 else f"{v1}^{m}")
        if n:
            mono.append(v2 if n == 1 else f"{v2}^{n}")
        mono_s = "*".join(mono)
        atoms = _coef_atoms(p._terms[(m, n)], p.mode)
        if len(atoms) == 1:
            mag, neg = atoms[0]
            if mono_s:
                body = mono_s if mag == "1" else f"{mag}*{mono_s}"
            else:
                body = mag
            pieces.append((body, neg))
        else:
            inner = _join(atoms)
            pieces.append((f"({inner})*{mono_s}" if mono_s else f"({inner})", False))
    return _join(pieces)


# --- parsing ---------------------------------------------------------------

class ParseError(ValueError):
    """Syntax or semantic error; ``offset`` is a byte offset into the source."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+/\d+|\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def _tokenize(src: str):
    pos, toks = 0, []
    n = len(src)
    while True:
        while pos < n and src[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", len(src[:pos].encode()))
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), len(src[:start].encode())))
        pos = m.end()
    toks.append(("end", "", len(src.encode())))
    return toks


class _Parser:
    def __init__(self, src: str, basis: str, mode: str):
        self.toks = _tokenize(src)
        self.i = 0
        self.basis = basis
        self.mode = mode

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def const(self, c) -> Polynomial2:
        return Polynomial2.constant(c, self.basis, "exact")

    def expr(self) -> Polynomial2:
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial2:
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> Polynomial2:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.factor()
        return self.factor()

    def factor(self) -> Polynomial2:
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, text, off = self.take()
            if kind != "num" or not text.isdigit():
                raise ParseError(f"exponent must be a non-negative integer, got {text or 'end of input'!r}", off)
            return base ** int(text)
        return base

    def base(self) -> Polynomial2:
        kind, text, off = self.take()
        if kind == "num":
            return self.const(Fraction(text))
        if kind == "name":
            if text == "i":
                return self.const(QI2(0, 1))
            if text == "sqrt2":
                return self.const(QI2(0, 0, 1))
            names = VARIABLES[self.basis]
            if text in names:
                return Polynomial2.variable(names.index(text), self.basis, "exact")
            other = LADDER if self.basis == CARTESIAN else CARTESIAN
            if text in VARIABLES[other]:
                raise ParseError(f"variable {text!r} not in {self.basis} basis", off)
            raise ParseError(f"unknown identifier {text!r}", off)
        if kind == "op" and text == "(":
            inner = self.expr()
            k2, t2, o2 = self.take()
            if t2 != ")":
                raise ParseError("expected ')'", o2)
            return inner
        raise ParseError(f"unexpected {text or 'end of input'!r}", off)


def parse_expression(src: str, basis: str = CARTESIAN, mode: str = "exact") -> Polynomial2:
    """Parse and expand an arithmetic expression into a canonical polynomial.

    Decimals are read as exact rationals; ``mode="float"`` converts the
    result afterwards.
    """
    parser = _Parser(src, basis, mode)
    poly = parser.expr()
    kind, text, off = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing {text!r}", off)
    return poly.to_float() if mode == "float" else poly


def from_terms(items: Iterable[tuple[Exponent, object]], basis=CARTESIAN, mode="exact") -> Polynomial2:
    out: dict = {}
    for k, v in items:
        out[k] = out.get(k, 0) + v
    return Polynomial2(out, basis, mode)
