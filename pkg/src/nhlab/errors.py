"""Exception types shared across the package."""


class NHLabError(Exception):
    """Base class for all package errors."""


class ConfigError(NHLabError):
    """Malformed or unknown configuration input."""


class NonPositiveScale(NHLabError):
    """A scale parameter (m0, hbar, frequency) is not strictly positive."""


class ComplexLambda(NHLabError):
    """Harmonic coefficients would make the mass profile complex."""


class ZeroAuxiliary(NHLabError):
    """Both auxiliary coefficients vanish; alpha(t) would be identically zero."""


class AlphaZero(NHLabError):
    """alpha(t) is too close to zero at the requested time."""


class AlphaZeroCrossing(NHLabError):
    """alpha(t) crosses zero inside a requested time window."""

    def __init__(self, message: str, t_zero: float):
        super().__init__(message)
        self.t_zero = t_zero


class DegreeOutOfRange(NHLabError):
    """Hermite degree outside the supported range."""


class InterpolationOverrun(NHLabError):
    """Rescaled state support exceeds the grid."""


class SpectralOverflow(NHLabError):
    """Momentum-space weighting would exceed the dynamic-range guard."""


class BoundaryLeak(NHLabError):
    """Propagated amplitude reached the grid boundary."""

    def __init__(self, message: str, t: float):
        super().__init__(message)
        self.t = t


class StepCollapse(NHLabError):
    """Adaptive substepping exceeded the halving budget."""
