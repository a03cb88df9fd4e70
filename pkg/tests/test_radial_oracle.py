import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistmoyal import radial_oracle as ro
from twistmoyal.checks import DISCREPANCY
from twistmoyal.spectrum import quantized_k, twisted_energies

KS = (0.0, math.sqrt(5), 3 * math.sqrt(2))
# first-order perturbation integral of the twist term over the k = sqrt5 ground state,
# evaluated by arbitrary-precision quadrature
TWIST_SLOPE_REF = -1.73040048910682


@pytest.mark.parametrize("theta", [1.0, 2.0])
@pytest.mark.parametrize("k", KS)
def test_fd_reproduces_closed_form(theta, k):
    E = ro.fd_eigenvalues(ro.FDProblem(theta, k, 4000), 4)
    exact = [ro.oracle_energy(theta, k, n) for n in range(4)]
    np.testing.assert_allclose(E, exact, rtol=5e-4)


def test_theta2_ground_state():
    E = ro.fd_eigenvalues(ro.FDProblem(2.0, 0.0, 2000))[0]
    assert E == pytest.approx(1.0, abs=1e-5)


@pytest.mark.parametrize("k", KS)
def test_second_order_convergence(k):
    order = ro.convergence_order(ro.FDProblem(1.0, k, 500), 0, ro.oracle_energy(1.0, k, 0))
    assert order == pytest.approx(2.0, abs=0.3)
    assert ro.convergence_order(ro.FDProblem(1.0, k, 400)) == pytest.approx(2.0, abs=0.3)


def test_twist_slope_matches_perturbation_theory():
    k = math.sqrt(5)
    base = ro.fd_eigenvalues(ro.FDProblem(1.0, k, 4000))[0]
    s1, s2 = ((ro.fd_eigenvalues(ro.FDProblem(1.0, k, 4000, twist=w))[0] - base) / w for w in (1e-3, 5e-4))
    extrapolated = 2 * s2 - s1
    assert extrapolated == pytest.approx(TWIST_SLOPE_REF, rel=1e-3)


def test_validation():
    with pytest.raises(ValueError):
        ro.FDProblem(0.0, 1.0)
    with pytest.raises(ValueError):
        ro.FDProblem(1.0, 1.0, n_points=50)
    with pytest.raises(ValueError):
        ro.fd_eigenvalues(ro.FDProblem(1.0, 0.0, 1000, r_max=2.0))
    with pytest.raises(ValueError):
        ro.fd_eigenvalues(ro.FDProblem(1.0, 0.0), 0)
    with pytest.raises(ValueError):
        ro.fd_eigenvalues(ro.FDProblem(1.0, 0.0, twist=-1.0))


@settings(max_examples=12)
@given(st.sampled_from(KS), st.integers(0, 3), st.floats(0.5, 3))
def test_closed_form_solves_radial_equation(k, n, theta):
    E = ro.oracle_energy(theta, k, n)
    prm = ro.RadialParams(theta, k, E)
    assert ro.ode_residual(ro.oracle_radial_r(theta, k, n), "equ11prime", prm) < 1e-8
    assert ro.ode_residual(ro.oracle_radial_rho(theta, k, n), "sing", prm) < 1e-8


def test_wrong_energy_is_detected():
    k = math.sqrt(5)
    prm = ro.RadialParams(1.0, k, ro.oracle_energy(1.0, k, 0) + 0.1)
    assert ro.ode_residual(ro.oracle_radial_r(1.0, k, 0), "equ11prime", prm) > 1e-3


def test_published_radial_factor_fails_its_equation():
    k = quantized_k(0)
    E = twisted_energies(1.0, 0, "plus")
    res = ro.ode_residual(ro.paper_radial_rho(1.0, k, E), "sing", ro.RadialParams(1.0, k, E))
    assert 0.3 < res < 0.6


def test_residual_normalisations():
    k = math.sqrt(5)
    prm = ro.RadialParams(1.0, k, 2.0)
    u = ro.oracle_radial_r(1.0, k, 1)
    raw = ro.ode_residual(u, "equ11prime", prm, normalize=None)
    assert ro.ode_residual(lambda r: 5 * u(r), "equ11prime", prm, normalize=None) == pytest.approx(5 * raw, rel=1e-9)
    on_shell = ro.RadialParams(1.0, k, ro.oracle_energy(1.0, k, 1))
    assert ro.ode_residual(u, "equ11prime", on_shell, normalize="solution") < 1e-6
    with pytest.raises(ValueError):
        ro.ode_residual(u, "nope", prm)
    with pytest.raises(ValueError):
        ro.ode_residual(u, "sing", prm, normalize="max")


def test_indicial_exponents():
    ex = ro.indicial_exponents(math.sqrt(5))
    assert ex.frobenius == pytest.approx((math.sqrt(5) / 2, -math.sqrt(5) / 2))
    assert ex.paper == pytest.approx((2.5, -0.5))
    assert ex.check.status == DISCREPANCY


@given(st.floats(0.1, 4), st.floats(0, 5))
def test_default_radius_scales(theta, k):
    assert ro.default_r_max(theta, k) >= 8 * math.sqrt(theta)
    assert ro.FDProblem(theta, k).radius == ro.default_r_max(theta, k)
