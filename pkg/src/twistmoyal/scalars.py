"""Exact scalars in Q(i, sqrt2).

Every value is stored as ``(a + b*i + (c + d*i)*sqrt2) / den`` with integer
numerators, a positive denominator and the five integers jointly coprime.
The field is closed under +, -, *, / so the ladder-basis change
``a = (x1 + i x2)/sqrt2`` stays exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = ["QI2", "to_exact", "I", "SQRT2"]


class QI2:
    __slots__ = ("a", "b", "c", "d", "den")

    def __init__(self, a=0, b=0, c=0, d=0, den=1):
        if den == 0:
            raise ZeroDivisionError("QI2 with zero denominator")
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        g = math.gcd(a, b, c, d, den)
        if g > 1:
            a, b, c, d, den = a // g, b // g, c // g, d // g, den // g
        self.a, self.b, self.c, self.d, self.den = a, b, c, d, den

    @classmethod
    def from_rational(cls, q) -> "QI2":
        q = Fraction(q)
        return cls(q.numerator, 0, 0, 0, q.denominator)

    @classmethod
    def from_parts(cls, re=0, im=0, re2=0, im2=0) -> "QI2":
        """Build ``re + im*i + (re2 + im2*i)*sqrt2`` from rationals."""
        parts = [Fraction(x) for x in (re, im, re2, im2)]
        den = math.lcm(*(p.denominator for p in parts))
        return cls(*(p.numerator * (den // p.denominator) for p in parts), den)

    # --- views -----------------------------------------------------------
    @property
    def rational_part(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.a, self.den), Fraction(self.b, self.den)

    @property
    def sqrt2_part(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.c, self.den), Fraction(self.d, self.den)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def conjugate(self) -> "QI2":
        return QI2(self.a, -self.b, self.c, -self.d, self.den)

    def sqrt2_conjugate(self) -> "QI2":
        return QI2(self.a, self.b, -self.c, -self.d, self.den)

    def __complex__(self) -> complex:
        r2 = math.sqrt(2.0)
        return complex((self.a + self.c * r2) / self.den, (self.b + self.d * r2) / self.den)

    def __abs__(self) -> float:
        return abs(complex(self))

    # --- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return QI2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, self.den)
        m, n = o.den, self.den
        return QI2(self.a * m + o.a * n, self.b * m + o.b * n,
                   self.c * m + o.c * n, self.d * m + o.d * n, n * m)

    __radd__ = __add__

    def __neg__(self):
        return QI2(-self.a, -self.b, -self.c, -self.d, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        if not (c1 or d1 or c2 or d2):
            return QI2(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, 0, 0, self.den * o.den)
        # (p1 + q1 r)(p2 + q2 r) = p1 p2 + 2 q1 q2 + (p1 q2 + q1 p2) r,  r = sqrt2
        pa = a1 * a2 - b1 * b2 + 2 * (c1 * c2 - d1 * d2)
        pb = a1 * b2 + b1 * a2 + 2 * (c1 * d2 + d1 * c2)
        qa = a1 * c2 - b1 * d2 + c1 * a2 - d1 * b2
        qb = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
        return QI2(pa, pb, qa, qb, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "QI2":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # multiply by the sqrt2-conjugate, then by the complex conjugate
        s = self.sqrt2_conjugate()
        n = self * s  # in Q(i)
        nbar = n.conjugate()
        mod2 = n * nbar  # rational, positive
        q = Fraction(mod2.a, mod2.den)
        return s * nbar * QI2(q.denominator, 0, 0, 0, q.numerator)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QI2(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- comparison ------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.a, self.b, self.c, self.d, self.den) == (o.a, o.b, o.c, o.d, o.den)

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.a, self.den))
        return hash((self.a, self.b, self.c, self.d, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"QI2({self.a}, {self.b}, {self.c}, {self.d}, den={self.den})"


def _coerce(x):
    if isinstance(x, QI2):
        return x
    if isinstance(x, (int, Rational)):
        return QI2.from_rational(x)
    return NotImplemented


def to_exact(x) -> QI2:
    """Convert ints, Fractions, floats (bit-exact) or QI2 to QI2.

    Complex floats map their real and imaginary parts bit-exactly.
    """
    if isinstance(x, QI2):
        return x
    if isinstance(x, complex):
        return QI2.from_parts(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, str):
        return QI2.from_rational(Fraction(x))
    return QI2.from_rational(Fraction(x))


I = QI2(0, 1)
SQRT2 = QI2(0, 0, 1)
