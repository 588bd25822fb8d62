import math

import numpy as np
import pytest

from nhlab import PhysParams, Regime, TimeWindow, validate_params
from nhlab import auxsolve
from nhlab.errors import AlphaZero, AlphaZeroCrossing


def _inverted(a, b, w0):
    return validate_params(PhysParams(m0=1.0, freq=w0, regime=Regime.INVERTED,
                                      coeff_a=a, coeff_b=b))


def test_alpha_values(harm_params):
    assert auxsolve.alpha(0.0, harm_params) == pytest.approx(1.0)
    # cos(pi/3) by independent evaluation
    assert auxsolve.alpha(math.pi / 3, harm_params) == pytest.approx(math.cos(math.pi / 3))
    assert auxsolve.alpha(0.0, _inverted(1.0, 1.0, 2.0)) == pytest.approx(2.0)


def test_lambda_derivs_harmonic_at_zero(harm_params):
    # lambda = cos^2 t for A=B=0.5: (1, 0, -2) at t=0
    lam, lamd, lamdd = auxsolve.lambda_derivs(0.0, harm_params)
    assert lam == pytest.approx(1.0)
    assert lamd == pytest.approx(0.0, abs=1e-15)
    assert lamdd == pytest.approx(-2.0)


def test_lambda_harmonic_quarter_pi(harm_params):
    lam, _, _ = auxsolve.lambda_derivs(math.pi / 4, harm_params)
    assert lam == pytest.approx(0.5)


def test_lambda_derivs_inverted_at_zero(inv_params):
    # lambda = cosh^2 t: second derivative 2(sinh^2 + cosh^2) = +2 at t=0
    lam, lamd, lamdd = auxsolve.lambda_derivs(0.0, inv_params)
    assert (lam, lamd, lamdd) == (pytest.approx(1.0), pytest.approx(0.0), pytest.approx(2.0))


@pytest.mark.parametrize("regime", [Regime.HARMONIC, Regime.INVERTED])
def test_lambda_derivs_match_finite_differences(regime, harm_params, inv_params):
    p = harm_params if regime is Regime.HARMONIC else inv_params
    rng = np.random.default_rng(3)
    h = 1e-4
    for t in rng.uniform(0.05, 0.9, size=20):
        lam, lamd, lamdd = auxsolve.lambda_derivs(t, p)
        lam_p = auxsolve.lambda_derivs(t + h, p)[0]
        lam_m = auxsolve.lambda_derivs(t - h, p)[0]
        fd1 = (lam_p - lam_m) / (2 * h)
        fd2 = (lam_p - 2 * lam + lam_m) / h**2
        assert fd1 == pytest.approx(lamd, rel=1e-6, abs=1e-8)
        assert fd2 == pytest.approx(lamdd, rel=1e-6, abs=1e-5)


def test_omega_sq_residual_near_zero(harm_params, inv_params):
    assert auxsolve.omega_sq_residual(0.3, harm_params) < 1e-12
    assert auxsolve.omega_sq_residual(1.0, inv_params) < 1e-10


def test_perturbed_lambdadd_gives_large_residual(harm_params):
    # recompute the combination with +0.1 injected into lambda''
    lam, lamd, lamdd = auxsolve.lambda_derivs(0.3, harm_params)
    resid = abs((lamdd + 0.1) - lamd**2 / (2 * lam) + 2 * lam * auxsolve.omega_sq(harm_params))
    assert resid >= 0.09


@pytest.mark.parametrize("regime", [Regime.HARMONIC, Regime.INVERTED])
def test_omega_sq_of_t_constant(regime, harm_params, inv_params):
    p = harm_params if regime is Regime.HARMONIC else inv_params
    s = auxsolve.omega_sq(p)
    rng = np.random.default_rng(11)
    for t in rng.uniform(0.0, 1.0, size=100):
        assert abs(auxsolve.omega_sq_of_t(t, p) - s) / abs(s) < 1e-9


@pytest.mark.parametrize("regime", [Regime.HARMONIC, Regime.INVERTED])
def test_alpha_ode_residual_finite_differences(regime, harm_params, inv_params):
    # a second centered difference of alpha itself amplifies roundoff to ~1e-6,
    # so differentiate the closed-form first derivative instead
    p = harm_params if regime is Regime.HARMONIC else inv_params
    s = auxsolve.omega_sq(p)
    rng = np.random.default_rng(5)
    h = 1e-5
    for t in rng.uniform(0.0, 1.0, size=100):
        add_fd = (auxsolve.alpha_dot(t + h, p) - auxsolve.alpha_dot(t - h, p)) / (2 * h)
        a = auxsolve.alpha(t, p)
        ad_fd = (auxsolve.alpha(t + h, p) - auxsolve.alpha(t - h, p)) / (2 * h)
        assert abs(add_fd + s * a) < 1e-10 * max(1.0, abs(s * a))
        assert abs(ad_fd - auxsolve.alpha_dot(t, p)) < 1e-9 * max(1.0, abs(ad_fd))


def test_validate_interval_harmonic(harm_params):
    auxsolve.validate_interval(TimeWindow(0.0, 1.0), harm_params)
    with pytest.raises(AlphaZeroCrossing) as excinfo:
        auxsolve.validate_interval(TimeWindow(0.0, 2.0), harm_params)
    assert excinfo.value.t_zero == pytest.approx(math.pi / 2, rel=1e-6)


def test_validate_interval_inverted_sign_change():
    p = _inverted(1.0, -1.0, 1.0)
    with pytest.raises(AlphaZeroCrossing) as excinfo:
        auxsolve.validate_interval(TimeWindow(-1.0, 1.0), p)
    assert excinfo.value.t_zero == pytest.approx(0.0, abs=1e-9)
    # same-sign exponentials never vanish
    auxsolve.validate_interval(TimeWindow(-5.0, 5.0), _inverted(1.0, 1.0, 1.0))


def test_alpha_zero_raises(harm_params):
    with pytest.raises(AlphaZero):
        auxsolve.lambda_derivs(math.pi / 2, harm_params)


def test_auxiliary_solution_wrapper(harm_params):
    sol = auxsolve.AuxiliarySolution(harm_params)
    assert sol.alpha(0.0) == pytest.approx(1.0)
    assert sol.lam(0.0) == pytest.approx(1.0)
    sol.validate(TimeWindow(0.0, 1.0))
