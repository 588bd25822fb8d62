import math

import numpy as np
import pytest

from nhlab import Branch, PhysParams, Regime, validate_params
from nhlab import specfun
from nhlab.errors import DegreeOutOfRange


def hermite_series(n: int, z: complex) -> complex:
    """Independent oracle: explicit sum over the polynomial coefficients."""
    total = 0.0 + 0.0j
    for k in range(n // 2 + 1):
        total += (
            math.factorial(n)
            * (-1.0) ** k
            * (2.0 * z) ** (n - 2 * k)
            / (math.factorial(k) * math.factorial(n - 2 * k))
        )
    return total


def _params(freq=1.0, m0=1.0, regime=Regime.HARMONIC):
    return validate_params(PhysParams(m0=m0, freq=freq, regime=regime))


def test_hermite_base_cases():
    assert specfun.hermite(0, 3.7 - 2.0j) == 1.0
    assert specfun.hermite(1, 2.0 + 3.0j) == 4.0 + 6.0j
    # H2(z) = 4 z^2 - 2 evaluated independently
    assert specfun.hermite(2, 1.0 + 1.0j) == pytest.approx(hermite_series(2, 1 + 1j))
    assert specfun.hermite(2, 1.0 + 1.0j) == pytest.approx(-2.0 + 8.0j)


def test_hermite_matches_series_complex_sample():
    rng = np.random.default_rng(42)
    for n in range(21):
        for _ in range(10):
            z = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
            got = specfun.hermite(n, z)
            want = hermite_series(n, z)
            assert abs(got - want) <= 1e-10 * max(1.0, abs(want))


def test_hermite_parity():
    rng = np.random.default_rng(1)
    for n in range(0, 15):
        z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        lhs = specfun.hermite(n, -z)
        rhs = (-1.0) ** n * specfun.hermite(n, z)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_hermite_vectorized():
    z = np.array([0.0, 1.0, 1.0 + 1.0j])
    got = specfun.hermite(2, z)
    assert np.allclose(got, [(-2 + 0j), (2 + 0j), (-2 + 8j)])


def test_degree_out_of_range():
    with pytest.raises(DegreeOutOfRange):
        specfun.hermite(-1, 0.0)
    with pytest.raises(DegreeOutOfRange):
        specfun.hermite(65, 0.0)
    with pytest.raises(DegreeOutOfRange):
        specfun.ho_norm(65, _params())


def test_ho_norm_values():
    p = _params()
    assert specfun.ho_norm(0, p) == pytest.approx(math.pi ** -0.25)
    assert specfun.ho_norm(1, p) == pytest.approx(math.pi ** -0.25 / math.sqrt(2.0))
    assert specfun.ho_norm(0, _params(freq=4.0)) == pytest.approx((4.0 / math.pi) ** 0.25)


def test_eigenstate_ho_pointwise():
    p = _params()
    assert specfun.eigenstate_ho(0, 0.0, p) == pytest.approx(math.pi ** -0.25)
    assert abs(specfun.eigenstate_ho(1, 0.0, p)) < 1e-15


def test_eigenstate_ho_normalized_by_quadrature():
    p = _params()
    x = np.arange(-12.0, 12.0 + 1e-3, 1e-3)
    vals = np.abs(specfun.eigenstate_ho(2, x, p)) ** 2
    integral = np.trapezoid(vals, dx=1e-3)
    assert integral == pytest.approx(1.0, abs=1e-8)


def test_eigenstate_ho_orthonormality():
    p = _params()
    x = np.linspace(-14.0, 14.0, 6001)
    dx = x[1] - x[0]
    states = [specfun.eigenstate_ho(n, x, p) for n in range(7)]
    for m in range(7):
        for n in range(7):
            overlap = np.trapezoid(np.conj(states[m]) * states[n], dx=dx)
            assert abs(overlap - (1.0 if m == n else 0.0)) < 1e-7


def test_eigenstate_inverted_values():
    p = _params(regime=Regime.INVERTED)
    assert specfun.eigenstate_inverted(0, 0.0, Branch.PLUS, p) == pytest.approx(1.0)
    assert abs(specfun.eigenstate_inverted(1, 0.0, Branch.MINUS, p)) < 1e-15
    # plus branch carries exp(-i m0 w0 x^2 / (2 hbar))
    got = specfun.eigenstate_inverted(0, 1.0, Branch.PLUS, p)
    assert got == pytest.approx(np.exp(-0.5j))
    got = specfun.eigenstate_inverted(0, 1.0, Branch.MINUS, p)
    assert got == pytest.approx(np.exp(+0.5j))


def test_eigenstate_inverted_hermite_argument_rotation():
    # H_1 picks up the e^{+-i pi/4} rotation of the argument
    p = _params(regime=Regime.INVERTED)
    x = 1.3
    for branch in (Branch.PLUS, Branch.MINUS):
        got = specfun.eigenstate_inverted(1, x, branch, p)
        rot = np.exp(branch.sign * 1j * np.pi / 4)
        want = np.exp(-branch.sign * 1j * x**2 / 2) * 2.0 * rot * x
        assert got == pytest.approx(want)
