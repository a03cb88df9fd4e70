import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import roots_genlaguerre

from twistmoyal import specfun
from twistmoyal.checks import DISCREPANCY, PASS

# reference values from 30-digit arbitrary-precision evaluations
GAMMA_REF = [
    (0.5, 1.7724538509055160273),
    (3.7, 4.1706517837966040301),
    (-2.5, -0.94530872048294188123),
    (10.3, 716430.68906237640663),
]
KUMMER_REF = [
    (0.3, 1.7, 2.5, 1.9378165350288670869),
    (-2.5, 1.5, 4.0, 0.59037665471789105005),
    (-3, 2.5, 1.75, -0.18611111111111111111),
    (1.2, 0.5, -3.0, -0.28197509965679491619),
    (0.5, 1.5, 12.0, 7110.5624885245042799),
]


@pytest.mark.parametrize("z, ref", GAMMA_REF)
def test_gamma_reference(z, ref):
    assert specfun.gamma_fn(z) == pytest.approx(ref, rel=1e-13)


def test_gamma_complex_reference():
    assert specfun.gamma_fn(1 + 2j) == pytest.approx(0.15190400267003613745 + 0.019804880161854981972j, rel=1e-13)


def test_gamma_integer_is_factorial_and_poles_raise():
    assert specfun.gamma_fn(7) == 720.0
    for pole in (0, -1, -4.0):
        with pytest.raises(ValueError):
            specfun.gamma_fn(pole)


@given(st.floats(0.05, 30))
def test_gamma_recurrence(z):
    assert specfun.gamma_fn(z + 1) == pytest.approx(z * specfun.gamma_fn(z), rel=1e-12)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=12), st.integers(0, 8), st.integers(0, 8))
def test_pochhammer_composition_exact(lam, m, n):
    assert specfun.pochhammer(lam, m + n) == specfun.pochhammer(lam, m) * specfun.pochhammer(lam + m, n)


def test_pochhammer_values():
    assert specfun.pochhammer(0.5, 5) == pytest.approx(29.53125)
    assert specfun.pochhammer(Fraction(-5, 2), 4) == Fraction(-15, 16)
    assert specfun.pochhammer(3, 0) == 1
    with pytest.raises(ValueError):
        specfun.pochhammer(1, -1)


@pytest.mark.parametrize("a, b, z, ref", KUMMER_REF)
def test_kummer_reference(a, b, z, ref):
    assert specfun.kummer_phi(a, b, z) == pytest.approx(ref, rel=1e-13)


def test_kummer_terminates_to_polynomial():
    terms = specfun.kummer_phi_terms(-4, 1.5, 3.0)
    assert len(terms) == 5
    # Phi(-1, b; z) = 1 - z/b exactly
    assert specfun.kummer_phi(-1, 2.0, 0.5) == 0.75


def test_kummer_rejects_nonpositive_integer_b():
    with pytest.raises(ValueError):
        specfun.kummer_phi(0.5, -2, 1.0)


@settings(max_examples=60)
@given(st.floats(-3, 3, allow_subnormal=False), st.floats(0.3, 5), st.floats(-4, 4))
def test_kummer_transformation(a, b, z):
    lhs = specfun.kummer_phi(a, b, z)
    rhs = math.exp(z) * specfun.kummer_phi(b - a, b, -z)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


@settings(max_examples=60)
@given(st.floats(-3, 3, allow_subnormal=False), st.floats(0.3, 5), st.floats(0, 10))
def test_kummer_ode_relative_residual(a, b, z):
    assert specfun.kummer_ode_residual(a, b, z, relative=True) < 1e-12


def test_second_solution_solves_kummer_equation():
    assert specfun.kummer_second_solution_residual(0.5, 1.5, 2.0, relative=True) < 1e-12


def test_laguerre_and_hermite_reference():
    assert specfun.laguerre(5, 0.5, 3.2) == pytest.approx(1.4016952499999999085, rel=1e-14)
    assert specfun.laguerre(12, 2, 7.5) == pytest.approx(-14.084940566645040141, rel=1e-13)
    assert specfun.hermite(6, 1.3) == pytest.approx(34.787775999999959123, rel=1e-14)
    assert specfun.hermite(9, -2.2) == pytest.approx(-20728.196808703953954, rel=1e-14)


@given(st.integers(1, 15), st.floats(0, 6), st.floats(0, 25))
def test_laguerre_three_term_recurrence(n, sigma, z):
    L = lambda j: specfun.laguerre(j, sigma, z)
    lhs = (n + 1) * L(n + 1)
    rhs = (2 * n + 1 + sigma - z) * L(n) - (n + sigma) * L(n - 1)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9 * max(1.0, abs(L(n))))


@given(st.integers(0, 14), st.floats(0, 6), st.floats(0, 25))
def test_laguerre_routes_agree(n, sigma, z):
    u, v = specfun.laguerre(n, sigma, z, "sum"), specfun.laguerre(n, sigma, z, "phi")
    assert abs(u - v) <= 1e-11 * max(1.0, abs(u))


@given(st.integers(0, 12), st.floats(-5, 5))
def test_hermite_parity_and_routes(n, z):
    h = specfun.hermite(n, z)
    assert specfun.hermite(n, -z) == pytest.approx((-1) ** n * h, rel=1e-13, abs=1e-13)
    assert abs(specfun.hermite(n, z, "phi") - h) <= 1e-11 * max(1.0, abs(h))


@pytest.mark.parametrize("sigma", [0.0, 0.5, 2.5])
@pytest.mark.parametrize("order", [8, 16, 32, 64])
def test_gauss_laguerre_matches_scipy(sigma, order):
    rule = specfun.gauss_laguerre(sigma, order)
    x, w = roots_genlaguerre(order, sigma)
    np.testing.assert_allclose(rule.nodes, x, rtol=1e-12)
    big = w > 1e-200
    np.testing.assert_allclose(rule.weights[big], w[big], rtol=1e-8)
    assert np.all(rule.weights > 0)


@settings(max_examples=40)
@given(st.sampled_from([8, 16, 32, 64]), st.floats(0, 4), st.data())
def test_gauss_laguerre_exact_on_monomials(order, sigma, data):
    j = data.draw(st.integers(0, 2 * order - 1))
    rule = specfun.gauss_laguerre(sigma, order)
    exact = math.exp(math.lgamma(sigma + j + 1))
    assert rule.integrate(lambda z: z ** j) == pytest.approx(exact, rel=1e-10)


def test_gauss_laguerre_validates():
    with pytest.raises(ValueError):
        specfun.gauss_laguerre(-1.0, 8)
    with pytest.raises(ValueError):
        specfun.gauss_laguerre(0.0, 0)


@given(st.integers(0, 8), st.integers(0, 8), st.sampled_from([0.0, 1.0, 2.5]))
def test_magic_identity_at_delta_zero(n, m, sigma):
    _, res = specfun.laguerre_moment(n, m, sigma)
    assert res.status == PASS


def test_magic_identity_fails_at_half_shift():
    value, res = specfun.laguerre_moment(1, 0, 0.0, 0.5)
    assert value == pytest.approx(-math.sqrt(math.pi) / 4, abs=1e-13)
    assert res.status == DISCREPANCY
    assert res.residual == pytest.approx(math.sqrt(math.pi) / 4, rel=1e-12)


def test_laguerre_ratio_holds_only_for_matching_weight():
    _, _, ok = specfun.laguerre_ratio_check(3, 1.0, 1.0)
    _, _, broken = specfun.laguerre_ratio_check(3, 1.0, 1.5)
    assert ok.status == PASS
    assert broken.status == DISCREPANCY
