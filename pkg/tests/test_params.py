import numpy as np
import pytest

from nhlab import PhysParams, Regime, validate_params
from nhlab.auxsolve import alpha
from nhlab.errors import ComplexLambda, ConfigError, NonPositiveScale, ZeroAuxiliary
from nhlab.params import (
    Branch,
    GridSpec,
    TimeWindow,
    gridspec_from_dict,
    physparams_from_dict,
    timewindow_from_dict,
)


def test_valid_symmetric_real_coefficients():
    p = validate_params(PhysParams(m0=1.0, freq=1.0, coeff_a=0.5, coeff_b=0.5))
    assert p.coeff_b == p.coeff_a.conjugate()


def test_harmonic_nonconjugate_rejected():
    with pytest.raises(ComplexLambda):
        validate_params(PhysParams(m0=1.0, freq=1.0, coeff_a=1.0, coeff_b=2.0))


@pytest.mark.parametrize("field,value", [("m0", -1.0), ("hbar", 0.0), ("freq", -2.0)])
def test_nonpositive_scales_rejected(field, value):
    kwargs = dict(m0=1.0, hbar=1.0, freq=1.0)
    kwargs[field] = value
    with pytest.raises(NonPositiveScale):
        validate_params(PhysParams(**kwargs))


def test_both_coefficients_zero_rejected():
    with pytest.raises(ZeroAuxiliary):
        validate_params(PhysParams(m0=1.0, freq=1.0, coeff_a=0.0, coeff_b=0.0))
    with pytest.raises(ZeroAuxiliary):
        validate_params(PhysParams(m0=1.0, freq=1.0, regime=Regime.INVERTED,
                                   coeff_a=0.0, coeff_b=0.0))


def test_roundoff_conjugate_coerced_exactly():
    a = 0.4 + 0.3j
    b = a.conjugate() + 1e-15
    p = validate_params(PhysParams(m0=1.0, freq=1.0, coeff_a=a, coeff_b=b))
    assert p.coeff_b == a.conjugate()


def test_inverted_complex_coefficients_rejected():
    with pytest.raises(ComplexLambda):
        validate_params(PhysParams(m0=1.0, freq=1.0, regime=Regime.INVERTED,
                                   coeff_a=1.0 + 0.5j, coeff_b=1.0))


def test_alpha_real_for_any_accepted_params():
    # complex-arithmetic evaluation of A e^{iwt} + conj(A) e^{-iwt} must be
    # real and must match the packaged evaluator
    rng = np.random.default_rng(7)
    ts = rng.uniform(-10.0, 10.0, size=1000)
    for _ in range(10):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if a == 0:
            continue
        p = validate_params(PhysParams(m0=1.0, freq=rng.uniform(0.2, 3.0),
                                       coeff_a=a, coeff_b=a.conjugate()))
        direct = p.coeff_a * np.exp(1j * p.freq * ts) + p.coeff_b * np.exp(-1j * p.freq * ts)
        scale = np.maximum(np.abs(direct), 1e-30)
        assert np.max(np.abs(direct.imag) / scale) < 1e-12
        assert np.allclose(direct.real, alpha(ts, p), rtol=1e-12, atol=1e-14)


def test_gridspec_validation():
    with pytest.raises(ConfigError):
        GridSpec(2.0, -2.0, 64)
    with pytest.raises(ConfigError):
        GridSpec(-2.0, 2.0, 8)
    g = GridSpec(-2.0, 2.0, 17)
    assert g.dx == pytest.approx(4.0 / 16)
    assert g.points().shape == (17,)


def test_timewindow_validation():
    with pytest.raises(ConfigError):
        TimeWindow(1.0, 0.0)
    with pytest.raises(ConfigError):
        TimeWindow(0.0, 1.0, max_step=0.0)


def test_physparams_from_dict_unknown_key_rejected():
    with pytest.raises(ConfigError):
        physparams_from_dict({"m0": 1.0, "bogus": 2})


def test_physparams_from_dict_complex_pairs():
    p = physparams_from_dict({"m0": 1.0, "freq": 2.0, "coeffA": [0.5, 0.25],
                              "coeffB": [0.5, -0.25]})
    assert p.coeff_a == 0.5 + 0.25j
    assert p.freq == 2.0


def test_physparams_from_dict_inverted_branch():
    p = physparams_from_dict({"regime": "inverted", "coeffA": 1.0, "coeffB": -1.0,
                              "branchInverted": "minus", "energyInverted": [0.0, 0.5]})
    assert p.regime is Regime.INVERTED
    assert p.branch_inverted is Branch.MINUS
    assert p.energy_inverted == 0.5j


def test_section_dicts_unknown_keys_rejected():
    with pytest.raises(ConfigError):
        gridspec_from_dict({"xMin": -1.0, "xMax": 1.0, "numPoints": 64, "pad": 1})
    with pytest.raises(ConfigError):
        timewindow_from_dict({"t0": 0.0, "t1": 1.0, "dt": 0.1})
