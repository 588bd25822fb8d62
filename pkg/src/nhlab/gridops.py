"""Grid-based states and operator actions: the unitary map F(t), momentum
exponentials exp[a p] (metric eta, its root rho), the time-dependent inner
product, and metric-weighted observables.

Conventions (position representation, hbar explicit):

    (F psi)(x)     = exp[+i m0 lambda' x^2 / (4 hbar lambda)] lambda^{-1/4} psi(x / sqrt(lambda))
    (F^-1 phi)(x)  = lambda^{1/4} exp[-i m0 lambda' x^2 / (4 hbar)] phi(sqrt(lambda) x)
    exp[a p] f(x)  = f(x - i a hbar)   <->   multiply the spectrum by exp(a hbar k)

F conjugates the canonical pair as F x F^+ = x/sqrt(lambda) and
F p F^+ = sqrt(lambda) p - m0 lambda' x / (2 sqrt(lambda)); the test suite
verifies both numerically.  The metric is eta = exp[a_eta p] with
a_eta = +2/(hbar m0 Omega0^2) (harmonic) or -2/(hbar m0 omega0^2) (inverted),
and rho = exp[a_eta p / 2].

Dilation resampling evaluates the trigonometric interpolant of the samples at
the rescaled points (Bluestein transform, spectral accuracy); target points
outside the grid are taken as zero, which is exact for the compact states
these operations require.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import czt

from . import auxsolve
from .errors import InterpolationOverrun, SpectralOverflow
from .params import GridSpec, PhysParams, Regime

# Spectrum below this fraction of the peak is treated as transform noise and
# zeroed before any exponential momentum weighting.
SPECTRAL_FLOOR = 1e-10
# Reject weightings that would push any retained mode past this dynamic range.
GUARD_RATIO = 1e12
# Compactness: boundary samples must stay below this fraction of the peak.
BOUNDARY_RATIO = 1e-10


@dataclass(frozen=True)
class WaveGrid:
    """Complex amplitudes sampled on a uniform grid at one instant."""

    spec: GridSpec
    amplitudes: np.ndarray
    timestamp: float = 0.0

    def with_amplitudes(self, amplitudes: np.ndarray, timestamp: float | None = None) -> "WaveGrid":
        t = self.timestamp if timestamp is None else timestamp
        return WaveGrid(self.spec, np.asarray(amplitudes, dtype=complex), t)


@dataclass(frozen=True)
class MetricWeights:
    """Momentum-exponential coefficient of the metric, with its range guard."""

    alpha_p: float
    guard_ratio: float = GUARD_RATIO

    @classmethod
    def from_params(cls, p: PhysParams) -> "MetricWeights":
        sign = 1.0 if p.regime is Regime.HARMONIC else -1.0
        return cls(alpha_p=2.0 * sign / (p.hbar * p.m0 * p.freq**2))


def metric_alpha(p: PhysParams) -> float:
    """Coefficient a_eta of the metric eta = exp[a_eta p]."""
    return MetricWeights.from_params(p).alpha_p


def sample(spec: GridSpec, fn, t: float = 0.0) -> WaveGrid:
    """Sample a callable psi(x, t) onto the grid."""
    x = spec.points()
    return WaveGrid(spec, np.asarray(fn(x, t), dtype=complex), t)


def boundary_fraction(state: WaveGrid) -> float:
    amp = np.abs(state.amplitudes)
    peak = amp.max()
    if peak == 0.0:
        return 0.0
    return float(max(amp[0], amp[-1]) / peak)


def l2_norm(state: WaveGrid) -> float:
    return math.sqrt(abs(_trapz(np.abs(state.amplitudes) ** 2, state.spec.dx)))


def inner(s1: WaveGrid, s2: WaveGrid) -> complex:
    """Plain trapezoid inner product, conjugate-linear in the first slot."""
    return _trapz(np.conj(s1.amplitudes) * s2.amplitudes, s1.spec.dx)


def _trapz(values: np.ndarray, dx: float) -> complex:
    return complex((np.sum(values) - 0.5 * (values[0] + values[-1])) * dx)


def _wavenumbers(spec: GridSpec) -> np.ndarray:
    return 2.0 * np.pi * np.fft.fftfreq(spec.num_points, d=spec.dx)


def _resample_scaled(values: np.ndarray, spec: GridSpec, scale: float) -> np.ndarray:
    """Trigonometric-interpolant samples at scale*x_j; zero outside the grid."""
    n = spec.num_points
    x0 = spec.x_min
    dx = spec.dx
    dk = 2.0 * np.pi / (n * dx)
    ch = np.fft.fftshift(np.fft.fft(values))
    s = np.arange(n) - n // 2
    pre = ch * np.exp(1j * dk * s * (scale - 1.0) * x0)
    theta = dk * scale * dx
    out = czt(pre, m=n, w=np.exp(1j * theta))
    out = out * np.exp(-1j * theta * (n // 2) * np.arange(n)) / n
    targets = scale * spec.points()
    out[(targets < spec.x_min) | (targets > spec.x_max)] = 0.0
    return out


def apply_F(state: WaveGrid, t: float, p: PhysParams, direction: str = "forward") -> WaveGrid:
    """Apply F(t) (or its inverse) to a compact grid state.

    Raises InterpolationOverrun when the rescaled support reaches the grid
    boundary, and propagates AlphaZero from the auxiliary evaluation.
    """
    lam, lamd, _ = auxsolve.lambda_derivs(t, p)
    x = state.spec.points()
    gamma = p.m0 * lamd / (4.0 * p.hbar * lam)
    if direction == "forward":
        out = lam**-0.25 * _resample_scaled(state.amplitudes, state.spec, 1.0 / math.sqrt(lam))
        out = np.exp(1j * gamma * x**2) * out
    elif direction == "inverse":
        tmp = np.exp(-1j * gamma * x**2) * state.amplitudes
        out = lam**0.25 * _resample_scaled(tmp, state.spec, math.sqrt(lam))
    else:
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    result = state.with_amplitudes(out, t)
    if boundary_fraction(result) > BOUNDARY_RATIO:
        raise InterpolationOverrun(
            f"rescaled support reaches the grid boundary (direction={direction}, "
            f"lambda={lam:.6g}, t={t:.6g})"
        )
    return result


def apply_exp_alpha_p(state: WaveGrid, alpha: float, p: PhysParams) -> WaveGrid:
    """Multiply the spectrum by exp(alpha hbar k); equals x -> x - i alpha hbar.

    Modes below SPECTRAL_FLOOR of the spectral peak are zeroed first (they
    are transform noise and would be amplified exponentially).  If any
    retained mode would be scaled past GUARD_RATIO times the peak, the state
    is rejected as SpectralOverflow.
    """
    spec_amp = np.fft.fft(state.amplitudes)
    mag = np.abs(spec_amp)
    peak = mag.max()
    if peak == 0.0:
        return state.with_amplitudes(state.amplitudes.copy())
    keep = mag > SPECTRAL_FLOOR * peak
    k = _wavenumbers(state.spec)
    # log-space guard; exp(alpha hbar k) alone may overflow a double
    log_weighted = np.log(mag[keep]) + alpha * p.hbar * k[keep]
    if np.max(log_weighted) > math.log(GUARD_RATIO) + math.log(peak):
        raise SpectralOverflow(
            f"exp[{alpha:.4g} p] exceeds the {GUARD_RATIO:.0e} dynamic-range guard"
        )
    out_spec = np.zeros_like(spec_amp)
    out_spec[keep] = spec_amp[keep] * np.exp(alpha * p.hbar * k[keep])
    return state.with_amplitudes(np.fft.ifft(out_spec))


def transformed_state(state: WaveGrid, t: float, p: PhysParams) -> WaveGrid:
    """chi = rho F(t) psi, the Hermitian-side image of a grid state."""
    return apply_exp_alpha_p(apply_F(state, t, p), 0.5 * metric_alpha(p), p)


def eta_density(state: WaveGrid, t: float, p: PhysParams) -> np.ndarray:
    """Metric-weighted density |rho F psi|^2 (pointwise)."""
    return np.abs(transformed_state(state, t, p).amplitudes) ** 2


def eta_norm(state: WaveGrid, t: float, p: PhysParams) -> float:
    """Norm induced by the time-dependent inner product."""
    chi = transformed_state(state, t, p)
    return l2_norm(chi)


def inner_eta_tilde(s1: WaveGrid, s2: WaveGrid, t: float, p: PhysParams) -> complex:
    """<s1, s2> under the time-dependent metric: <F s1, eta F s2> by quadrature."""
    f1 = apply_F(s1, t, p)
    f2 = apply_exp_alpha_p(apply_F(s2, t, p), metric_alpha(p), p)
    return inner(f1, f2)


def spectral_derivative(state: WaveGrid, order: int = 1) -> WaveGrid:
    """d^order/dx^order via the discrete spectrum (Nyquist zeroed for odd order)."""
    k = _wavenumbers(state.spec)
    if order % 2 == 1:
        k = k.copy()
        k[state.spec.num_points // 2] = 0.0
    out = np.fft.ifft((1j * k) ** order * np.fft.fft(state.amplitudes))
    return state.with_amplitudes(out)


def apply_p(state: WaveGrid, p: PhysParams, power: int = 1) -> WaveGrid:
    """Momentum operator p^power by spectral multiplication."""
    k = _wavenumbers(state.spec)
    if power % 2 == 1:
        k = k.copy()
        k[state.spec.num_points // 2] = 0.0
    out = np.fft.ifft((p.hbar * k) ** power * np.fft.fft(state.amplitudes))
    return state.with_amplitudes(out)


def moment(op: str, state: WaveGrid, t: float, p: PhysParams) -> complex:
    """Metric-weighted moment <psi| eta~(t) O |psi> for O in {X, P, X2, P2}.

    Computed as the plain oscillator moment of chi = rho F psi, which is the
    reduction the time-dependent metric produces for these observables.
    """
    chi = transformed_state(state, t, p)
    x = chi.spec.points()
    if op == "X":
        integrand = np.conj(chi.amplitudes) * x * chi.amplitudes
    elif op == "X2":
        integrand = np.conj(chi.amplitudes) * x**2 * chi.amplitudes
    elif op == "P":
        integrand = np.conj(chi.amplitudes) * apply_p(chi, p, 1).amplitudes
    elif op == "P2":
        integrand = np.conj(chi.amplitudes) * apply_p(chi, p, 2).amplitudes
    else:
        raise ValueError(f"unknown moment operator {op!r}")
    return _trapz(integrand, chi.spec.dx)


@dataclass(frozen=True)
class ObservableReport:
    """Metric-weighted first/second moments and the uncertainty product."""

    t: float
    mean_x: complex
    mean_p: complex
    var_x: float
    var_p: float
    product: float
    bound: float
    satisfied: bool


def uncertainty_report(state: WaveGrid, t: float, p: PhysParams) -> ObservableReport:
    """Variances and uncertainty product at time t, normalized by the eta-norm."""
    chi = transformed_state(state, t, p)
    x = chi.spec.points()
    dx = chi.spec.dx
    conj = np.conj(chi.amplitudes)
    norm2 = _trapz(conj * chi.amplitudes, dx).real
    mean_x = _trapz(conj * x * chi.amplitudes, dx) / norm2
    mean_x2 = _trapz(conj * x**2 * chi.amplitudes, dx) / norm2
    mean_p = _trapz(conj * apply_p(chi, p, 1).amplitudes, dx) / norm2
    mean_p2 = _trapz(conj * apply_p(chi, p, 2).amplitudes, dx) / norm2
    var_x = (mean_x2 - mean_x**2).real
    var_p = (mean_p2 - mean_p**2).real
    product = math.sqrt(max(var_x, 0.0) * max(var_p, 0.0))
    bound = 0.5 * p.hbar
    return ObservableReport(
        t=t,
        mean_x=mean_x,
        mean_p=mean_p,
        var_x=var_x,
        var_p=var_p,
        product=product,
        bound=bound,
        satisfied=product >= bound * (1.0 - 1e-6),
    )


def apply_pseudo_hamiltonian(state: WaveGrid, p: PhysParams) -> WaveGrid:
    """Time-independent non-Hermitian oscillator p^2/2m0 +- m0 w^2 x^2/2 + ix."""
    sign = 1.0 if p.regime is Regime.HARMONIC else -1.0
    x = state.spec.points()
    kinetic = apply_p(state, p, 2).amplitudes / (2.0 * p.m0)
    potential = (sign * 0.5 * p.m0 * p.freq**2 * x**2 + 1j * x) * state.amplitudes
    return state.with_amplitudes(kinetic + potential)


def apply_hermitian_h(state: WaveGrid, p: PhysParams) -> WaveGrid:
    """Similarity-transformed generator rho H rho^{-1} (Hermitian oscillator)."""
    half = 0.5 * metric_alpha(p)
    inner_state = apply_exp_alpha_p(state, -half, p)
    return apply_exp_alpha_p(apply_pseudo_hamiltonian(inner_state, p), half, p)
