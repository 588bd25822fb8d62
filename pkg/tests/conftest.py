import pytest

from nhlab import GridSpec, PhysParams, Regime, validate_params


@pytest.fixture(scope="session")
def harm_params() -> PhysParams:
    return validate_params(PhysParams(m0=1.0, freq=1.0, regime=Regime.HARMONIC,
                                      coeff_a=0.5, coeff_b=0.5))


@pytest.fixture(scope="session")
def inv_params() -> PhysParams:
    return validate_params(PhysParams(m0=1.0, freq=1.0, regime=Regime.INVERTED,
                                      coeff_a=0.5, coeff_b=0.5))


@pytest.fixture(scope="session")
def grid14() -> GridSpec:
    return GridSpec(-14.0, 14.0, 2048)


@pytest.fixture(scope="session")
def grid8() -> GridSpec:
    return GridSpec(-8.0, 8.0, 2048)
