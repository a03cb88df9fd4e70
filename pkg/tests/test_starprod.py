import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import params, polys
from twistmoyal.polyalg import LADDER, Polynomial2, change_basis, parse_expression
from twistmoyal.scalars import I, QI2
from twistmoyal.starprod import (
    DeformationParams,
    StarMode,
    associator,
    bracket_on,
    hamiltonian,
    hamiltonian_action,
    jacobi_residuals,
    ladder_action_closed_form,
    star_anticommutator,
    star_commutator,
    star_product,
    vielbein_bracket,
    x_action_closed_form,
)
from twistmoyal.verify import moyal_reference

x1, x2 = Polynomial2.variable(0), Polynomial2.variable(1)
a, abar = Polynomial2.variable(0, LADDER), Polynomial2.variable(1, LADDER)


def conj(p: Polynomial2) -> Polynomial2:
    return Polynomial2({k: v.conjugate() for k, v in p.terms.items()}, p.basis, p.mode)


def test_frozen_products():
    d = DeformationParams(1, Fraction(1, 10), 0)
    assert star_product(x1, x2, d) == parse_expression("x1*x2 + 1/2*i + 1/20*i*x2")
    assert star_product(x2, x1, d) == parse_expression("x1*x2 - 1/2*i - 1/20*i*x2")
    d0 = DeformationParams(2)
    # x1^2 * x2^2 in the constant-theta Moyal product: x1^2 x2^2 + 2 i theta x1 x2 - theta^2/2
    assert star_product(x1 * x1, x2 * x2, d0) == parse_expression("x1^2*x2^2 + 4*i*x1*x2 - 2")


def test_params_validation():
    with pytest.raises(ValueError):
        DeformationParams(0)
    with pytest.raises(ValueError):
        DeformationParams(-1, 1, 1)


@given(polys(), params())
def test_unit(f, d):
    one = Polynomial2.constant(1)
    for mode in StarMode:
        assert star_product(f, one, d, mode) == f
        assert star_product(one, f, d, mode) == f


@given(polys(), polys(), st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8))
def test_reduces_to_moyal_at_zero_twist(f, g, theta):
    d = DeformationParams(theta)
    assert star_product(f, g, d) == moyal_reference(f, g, theta)
    assert star_product(f, g, d, StarMode.VIELBEIN) == star_product(f, g, d)


@settings(max_examples=40)
@given(polys(3, 3), polys(3, 3), polys(3, 3), params(twisted=False))
def test_associative_at_zero_twist(f, g, h, d):
    assert associator(f, g, h, d).is_zero()


@given(polys(), polys(), params(twisted=False))
def test_conjugation_reverses_order(f, g, d):
    assert conj(star_product(f, g, d)) == star_product(conj(g), conj(f), d)


@given(params())
def test_coordinate_commutator(d):
    target = d.einv().scale(I * Fraction(d.theta))
    for mode in StarMode:
        assert star_commutator(x1, x2, d, mode) == target


@given(polys(), params())
def test_coordinate_anticommutator(f, d):
    for x in (x1, x2):
        assert star_anticommutator(x, f, d) == (x * f).scale(2)


@given(polys(), params())
def test_coordinate_action_closed_form(f, d):
    for mu, x in ((1, x1), (2, x2)):
        assert x_action_closed_form(mu, f, "left", d) == star_product(x, f, d)
        assert x_action_closed_form(mu, f, "right", d) == star_product(f, x, d)


@given(polys(basis=LADDER), params())
def test_ladder_action_closed_form(f, d):
    for which, v in (("a", a), ("abar", abar)):
        assert ladder_action_closed_form(which, f, "left", d) == star_product(v, f, d)
        assert ladder_action_closed_form(which, f, "right", d) == star_product(f, v, d)


@given(polys(3), polys(3), params())
def test_basis_covariance(f, g, d):
    assert change_basis(star_product(f, g, d)) == star_product(change_basis(f), change_basis(g), d)


@given(params())
def test_ladder_commutator(d):
    assert star_commutator(a, abar, d) == d.einv(LADDER).scale(Fraction(d.theta))


@given(polys(4), params())
def test_hamiltonian_operator_form(f, d):
    H = hamiltonian()
    assert hamiltonian_action(f, "left", d) == star_product(H, f, d)
    assert hamiltonian_action(f, "right", d) == star_product(f, H, d)


def test_hamiltonian_published_shift_is_absent():
    d = DeformationParams(1, Fraction(1, 10), Fraction(1, 20))
    gap = hamiltonian_action(x1, "left", d, "paper") - star_product(hamiltonian(), x1, d)
    # half of (theta^2/4) omega12_2 from the shifted d1 coefficient
    assert gap == Polynomial2.constant(Fraction(1, 160))
    d0 = DeformationParams(1)
    assert hamiltonian_action(x1, "left", d0, "paper") == star_product(hamiltonian(), x1, d0)


@given(params())
def test_jacobi_on_coordinates(d):
    for mode in StarMode:
        assert all(r.is_zero() for r in jacobi_residuals(d, mode).values())


@given(st.fractions(min_value=Fraction(1, 2), max_value=3, max_denominator=4),
       st.fractions(min_value=Fraction(-1, 2), max_value=Fraction(1, 2), max_denominator=20))
def test_associator_closed_form(theta, w):
    d = DeformationParams(theta, w, 0)
    assert associator(x1, x1, x2, d) == d.einv().scale(theta * theta / 4 * w)


def test_associator_scales_linearly():
    f, g, h = parse_expression("x1^2 + x2"), parse_expression("x1*x2"), parse_expression("x2^2 - x1")
    norms = [associator(f, g, h, DeformationParams(1, Fraction(1, 10 ** j), Fraction(1, 2 * 10 ** j))).norm()
             for j in (1, 2, 3, 4)]
    slopes = [math.log10(norms[j] / norms[j + 1]) for j in range(3)]
    assert all(abs(s - 1) < 0.1 for s in slopes)


def test_vielbein_reading_differs_at_second_order():
    gaps = []
    for s in (Fraction(1, 10), Fraction(1, 100)):
        d = DeformationParams(1, s, s / 2)
        gaps.append((star_product(x1, x2, d, StarMode.VIELBEIN) - star_product(x1, x2, d)).norm())
        assert star_commutator(x1, x2, d, StarMode.VIELBEIN) == star_commutator(x1, x2, d)
    # tenfold smaller twist shrinks the gap a hundredfold
    assert gaps[0] / gaps[1] == pytest.approx(100, rel=0.05)


@given(params(), polys(3))
def test_vielbein_bracket(d, p):
    br = vielbein_bracket(d)
    assert br.at_origin == (-2 * QI2.from_rational(Fraction(d.omega12_1)), -2 * QI2.from_rational(Fraction(d.omega12_2)))
    composed, first_order = bracket_on(d, p)
    assert composed == first_order


def test_float_mode_tracks_exact():
    d = DeformationParams(1, Fraction(1, 10), Fraction(1, 20))
    f, g = parse_expression("x1^2 + i*x2"), parse_expression("x2^3 - x1")
    exact = star_product(f, g, d).to_float()
    approx = star_product(f.to_float(), g.to_float(), d)
    assert (exact - approx).norm() < 1e-14
