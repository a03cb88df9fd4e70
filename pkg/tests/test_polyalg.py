from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys, scalars, small_q
from twistmoyal.polyalg import (
    CARTESIAN,
    LADDER,
    BasisMismatch,
    ModeMismatch,
    ParseError,
    Polynomial2,
    change_basis,
    differentiate,
    evaluate,
    parse_expression,
    render,
)
from twistmoyal.scalars import I, QI2, SQRT2, to_exact

x1, x2 = Polynomial2.variable(0), Polynomial2.variable(1)


# --- scalars ----------------------------------------------------------------

@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(scalars())
def test_complex_view_matches(a):
    assert complex(a * a) == pytest.approx(complex(a) ** 2, rel=1e-12, abs=1e-12)


def test_sqrt2_and_i():
    assert SQRT2 * SQRT2 == 2
    assert I * I == -1
    assert (SQRT2 / 2).inverse() == SQRT2
    assert to_exact(0.1) == QI2.from_rational(Fraction(0.1))
    with pytest.raises(ZeroDivisionError):
        QI2(0).inverse()


# --- ring -------------------------------------------------------------------

@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f - f == Polynomial2.zero()


@given(polys(), polys())
def test_product_rule(f, g):
    for var in (0, 1):
        assert differentiate(f * g, var) == differentiate(f, var) * g + f * differentiate(g, var)


@given(polys())
def test_mixed_partials_commute(f):
    assert differentiate(differentiate(f, 0), 1) == differentiate(differentiate(f, 1), 0)


@given(polys(), polys(), small_q, small_q)
def test_evaluation_is_a_homomorphism(f, g, a, b):
    assert evaluate(f * g, (a, b)) == evaluate(f, (a, b)) * evaluate(g, (a, b))
    assert evaluate(f + g, (a, b)) == evaluate(f, (a, b)) + evaluate(g, (a, b))


@given(polys())
def test_change_basis_round_trip(f):
    g = change_basis(f)
    assert g.basis == LADDER
    assert change_basis(g) == f
    assert g.degree == f.degree


def test_ladder_images():
    a = change_basis(x1 + x2 * I)
    assert a == Polynomial2({(1, 0): SQRT2}, LADDER)


def test_float_mode_prunes_and_mismatches_raise():
    f = Polynomial2({(1, 0): 1e-16, (0, 1): 1.0}, mode="float")
    assert dict(f.terms) == {(0, 1): 1 + 0j}
    with pytest.raises(ModeMismatch):
        f + x1
    with pytest.raises(BasisMismatch):
        x1 + Polynomial2.variable(0, LADDER)


def test_degree_and_zero():
    assert Polynomial2.zero().degree == -1
    assert (x1 ** 3 * x2).degree == 4
    with pytest.raises(ValueError):
        x1 ** -1


# --- parse and render ---------------------------------------------------------

@given(polys(basis=CARTESIAN))
def test_render_parse_round_trip(f):
    assert parse_expression(render(f)) == f


@given(polys(basis=LADDER))
def test_render_parse_round_trip_ladder(f):
    assert parse_expression(render(f), LADDER) == f


@pytest.mark.parametrize("src, expected", [
    ("(x1 + x2)^2", x1 * x1 + x1 * x2 * 2 + x2 * x2),
    ("0.5*x1 - 1/3", x1.scale(Fraction(1, 2)) - Fraction(1, 3)),
    ("-x1^2", -(x1 * x1)),
    ("i*sqrt2*x2", x2.scale(I * SQRT2)),
])
def test_parse_examples(src, expected):
    assert parse_expression(src) == expected


def test_render_is_canonical():
    assert render(parse_expression("x2*x1 + 1/2*i")) == "x1*x2 + 1/2*i"
    assert render(Polynomial2.zero()) == "0"


@pytest.mark.parametrize("src, offset", [
    ("x1 + $", 5),
    ("x1 +", 4),
    ("(x1", 3),
    ("x1^x2", 3),
    ("a + x1", 0),
    ("y", 0),
    ("x1 x2", 3),
])
def test_parse_errors_report_byte_offset(src, offset):
    with pytest.raises(ParseError) as err:
        parse_expression(src)
    assert err.value.offset == offset


def test_float_mode_parse():
    f = parse_expression("0.1*x1", mode="float")
    assert f.mode == "float"
    assert f.coeff(1, 0) == pytest.approx(0.1)


@given(st.integers(0, 6))
def test_power_matches_repeated_product(n):
    p = x1 + x2.scale(I)
    q = Polynomial2.constant(1)
    for _ in range(n):
        q = q * p
    assert p ** n == q
