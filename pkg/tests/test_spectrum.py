import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistmoyal import spectrum
from twistmoyal.checks import DISCREPANCY

thetas = st.floats(0.1, 10)
ps = st.integers(0, 60)

# arbitrary-precision quadrature of the eigenstates (independent of the Gauss-Laguerre route)
A1_SQUARED_REF = {0: 0.10007501021131352082, 1: 0.096428232644953345616, 2: 0.041428781685989819232}
INNER_REF = {
    (0, 0): 1.0,
    (1, 1): 1.0975239861436594,
    (2, 2): 1.15230022373866772,
    (0, 1): 0.000386894668536962922 + 7.99003705299088641e-6j,
    (1, 2): 0.000199426901630930448 + 1.47692515852380806e-6j,
}


def test_worked_values():
    assert spectrum.quantized_k(0) == math.sqrt(5)
    assert spectrum.quantized_k(1) == pytest.approx(3 * math.sqrt(2), rel=1e-15)
    assert spectrum.quantized_k(1, sign=-1) == -spectrum.quantized_k(1)
    e_plus, e_minus = spectrum.twisted_energies(1.0, 0)
    assert e_plus == pytest.approx(3.0, abs=1e-15)
    assert e_minus == pytest.approx(0.0, abs=1e-15)


@given(ps)
def test_k_squared_is_integer(p):
    assert spectrum.quantized_k_squared(p) == (p + 1) * (4 * p + 5)
    assert spectrum.quantized_k(p) ** 2 == pytest.approx((p + 1) * (4 * p + 5), rel=1e-15)


@given(thetas, ps)
def test_branch_sum(theta, p):
    plus, minus = spectrum.twisted_energies(theta, p)
    assert plus + minus == pytest.approx(theta * (3 - 2 * p), rel=1e-12, abs=1e-12 * theta)
    assert plus > minus


@given(thetas, st.integers(0, 30))
def test_on_shell_kummer_index_terminates(theta, p):
    E = spectrum.twisted_energies(theta, p, "plus")
    nu, B, a, b = spectrum.kummer_parameters(theta, spectrum.quantized_k(p), E)
    assert a == pytest.approx(-p, abs=1e-12 * max(1, p))
    assert b == 2 * nu + 1
    assert B == 1 / theta


def test_figure_series_shape():
    fs = spectrum.figure_series(1.0, 20)
    assert fs.e_plus_decreasing and fs.e_minus_decreasing
    assert fs.rows[20].E_plus == pytest.approx(float(spectrum.E_PLUS_ASYMPTOTE), abs=0.05)
    assert fs.e_minus_tail_slope == pytest.approx(-2, abs=0.05)
    # large-p limit of E+ is 21/8 theta
    assert spectrum.twisted_energies(1.0, 10 ** 6, "plus") == pytest.approx(2.625, abs=1e-5)


def test_figure_series_requires_two_rows():
    with pytest.raises(ValueError):
        spectrum.figure_series(1.0, 0)


@pytest.mark.parametrize("p", [0, 1, 2])
def test_normalization_constant(p):
    assert spectrum.normalization_A1_squared(1.0, p) == pytest.approx(A1_SQUARED_REF[p], rel=1e-12)


@pytest.mark.parametrize("pq", sorted(INNER_REF))
def test_inner_products(pq):
    assert spectrum.inner_product(1.0, *pq) == pytest.approx(INNER_REF[pq], rel=1e-9, abs=1e-12)


@given(st.floats(0.2, 5))
def test_ground_state_normalised_for_any_theta(theta):
    assert spectrum.inner_product(theta, 0, 0).real == pytest.approx(1.0, abs=1e-8)


def test_lebesgue_measure_differs():
    assert abs(spectrum.inner_product(1.0, 0, 0, "lebesgue") - 1) > 1e-3
    with pytest.raises(ValueError):
        spectrum.inner_product(1.0, 0, 0, "other")


@given(st.floats(0.2, 3), st.floats(0, 2 * math.pi))
def test_eigenstate_phase_and_origin(r, alpha):
    f = spectrum.eigenstate_eval(1.0, 0, r, alpha)
    f0 = spectrum.eigenstate_eval(1.0, 0, r, 0.0)
    assert abs(f) == pytest.approx(abs(f0), rel=1e-12)
    assert spectrum.eigenstate_eval(1.0, 0, 0.0, alpha) == 0


def test_ordinary_condition_contradicts_claim():
    k, res = spectrum.ordinary_k_condition(3, 0, 1.0)
    assert k == pytest.approx(0.0)
    assert res.status == DISCREPANCY
    with pytest.raises(ValueError):
        spectrum.ordinary_k_condition(0, 0)


@given(st.floats(-5, 5).filter(lambda v: abs(v) > 1e-3), st.floats(-5, 5))
def test_constraint_angle(w1, w2):
    red = spectrum.polar_reduction(w1, w2, 1.0)
    assert red.constraint_residual(w1, w2) < 1e-12 * (abs(w1) + abs(w2))
    assert spectrum.twist_ratio(w1, w2) * math.cos(red.alpha) == pytest.approx(w1)


def test_unconstrained_reduction():
    red = spectrum.polar_reduction(0.0, 0.0, 2.0)
    assert red.unconstrained and red.alpha is None
    with pytest.raises(spectrum.UnconstrainedError):
        spectrum.constraint_alpha(0.0, 0.0)
    assert spectrum.constraint_alpha(0.0, 1.0) == math.pi / 2


def test_parameter_validation():
    with pytest.raises(ValueError):
        spectrum.twisted_energies(0.0, 1)
    with pytest.raises(ValueError):
        spectrum.quantized_k(-1)
    with pytest.raises(ValueError):
        spectrum.nu_branch(1.0, "sideways")
