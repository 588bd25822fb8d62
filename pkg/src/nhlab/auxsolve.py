"""Closed-form auxiliary machinery: alpha(t), the mass profile lambda(t) and
its derivatives, residual checks, and time-window validation.

The auxiliary equation

    lambda'' - lambda'^2 / (2 lambda) + 2 lambda S = 0,      S = Omega0^2 (harmonic)
                                                             S = -omega0^2 (inverted)

linearizes under lambda = alpha(t)^2 to  alpha'' + S alpha = 0, so

    harmonic:  alpha(t) = A exp(+i Omega0 t) + conj(A) exp(-i Omega0 t)  (real)
    inverted:  alpha(t) = A exp(+omega0 t) + B exp(-omega0 t),  A, B real.

Zeros of alpha make the Hamiltonian's kinetic coefficient 1/lambda singular;
every time-dependent operation therefore requires a window validated by
``validate_interval``.  Derivatives are closed-form; finite differences are
used only as oracles in the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import AlphaZero, AlphaZeroCrossing
from .params import PhysParams, Regime, TimeWindow

_ZERO_MESH = 10_000


def _coeff_scale(p: PhysParams) -> float:
    return max(abs(p.coeff_a), abs(p.coeff_b))


def alpha_floor(p: PhysParams) -> float:
    """Threshold below which |alpha| counts as zero."""
    return 1e-9 * _coeff_scale(p)


def alpha(t, p: PhysParams):
    """alpha(t); accepts scalar or ndarray t, always real-valued."""
    w = p.freq
    if p.regime is Regime.HARMONIC:
        # 2 Re[A e^{i w t}] since coeff_b = conj(coeff_a)
        a = p.coeff_a
        return 2.0 * (a.real * np.cos(w * t) - a.imag * np.sin(w * t))
    return p.coeff_a.real * np.exp(w * t) + p.coeff_b.real * np.exp(-w * t)


def alpha_dot(t, p: PhysParams):
    w = p.freq
    if p.regime is Regime.HARMONIC:
        a = p.coeff_a
        return -2.0 * w * (a.real * np.sin(w * t) + a.imag * np.cos(w * t))
    return w * (p.coeff_a.real * np.exp(w * t) - p.coeff_b.real * np.exp(-w * t))


def alpha_ddot(t, p: PhysParams):
    # alpha'' = -S alpha with S = +freq^2 (harmonic), -freq^2 (inverted)
    s = omega_sq(p)
    return -s * alpha(t, p)


def omega_sq(p: PhysParams) -> float:
    """Signed constant S of the auxiliary equation (+Omega0^2 or -omega0^2)."""
    return p.freq**2 if p.regime is Regime.HARMONIC else -(p.freq**2)


def lambda_derivs(t, p: PhysParams):
    """Return (lambda, lambda', lambda'') at time t.

    lambda = alpha^2, lambda' = 2 alpha alpha', lambda'' = 2(alpha'^2 + alpha alpha'').
    Raises AlphaZero when |alpha(t)| is below the zero threshold.
    """
    a = alpha(t, p)
    if np.min(np.abs(a)) < alpha_floor(p):
        raise AlphaZero(f"alpha(t) ~ 0 at t={t}")
    ad = alpha_dot(t, p)
    add = alpha_ddot(t, p)
    return a * a, 2.0 * a * ad, 2.0 * (ad * ad + a * add)


def omega_sq_residual(t: float, p: PhysParams) -> float:
    """|lambda'' - lambda'^2/(2 lambda) + 2 lambda S| at time t (absolute)."""
    lam, lamd, lamdd = lambda_derivs(t, p)
    return float(abs(lamdd - lamd**2 / (2.0 * lam) + 2.0 * lam * omega_sq(p)))


def omega_sq_of_t(t: float, p: PhysParams) -> float:
    """Effective frequency-squared lambda'^2/(4 lambda^2) - lambda''/(2 lambda).

    Equals the constant ``omega_sq(p)`` identically for the closed forms.
    """
    lam, lamd, lamdd = lambda_derivs(t, p)
    return float(lamd**2 / (4.0 * lam**2) - lamdd / (2.0 * lam))


def _harmonic_zeros_in(w: TimeWindow, p: PhysParams):
    """Analytic zeros of 2|A| cos(freq t + arg A) inside the window."""
    a = p.coeff_a
    if a == 0:
        return []
    phase = cmath.phase(a)
    # cos(freq t + phase) = 0  =>  freq t + phase = pi/2 + m pi
    m_lo = math.floor((p.freq * w.t0 + phase - math.pi / 2) / math.pi)
    m_hi = math.ceil((p.freq * w.t1 + phase - math.pi / 2) / math.pi)
    zeros = []
    for m in range(m_lo - 1, m_hi + 2):
        t = (math.pi / 2 + m * math.pi - phase) / p.freq
        if w.t0 <= t <= w.t1:
            zeros.append(t)
    return sorted(zeros)


def _inverted_zeros_in(w: TimeWindow, p: PhysParams):
    a, b = p.coeff_a.real, p.coeff_b.real
    if a == 0.0 or b == 0.0:
        return []  # single exponential never vanishes
    ratio = -b / a
    if ratio <= 0:
        return []
    t = math.log(ratio) / (2.0 * p.freq)
    return [t] if w.t0 <= t <= w.t1 else []


def validate_interval(w: TimeWindow, p: PhysParams) -> None:
    """Accept the window only if |alpha| stays above 10x the zero threshold.

    Combines the analytic zero locations of the closed forms with a dense
    scan (>= 10^4 points), and reports the earliest offending time.
    """
    floor = 10.0 * alpha_floor(p)
    if p.regime is Regime.HARMONIC:
        zeros = _harmonic_zeros_in(w, p)
    else:
        zeros = _inverted_zeros_in(w, p)
    if zeros:
        raise AlphaZeroCrossing(
            f"alpha(t) vanishes at t={zeros[0]:.9g} inside [{w.t0}, {w.t1}]", zeros[0]
        )
    ts = np.linspace(w.t0, w.t1, _ZERO_MESH)
    vals = np.abs(alpha(ts, p))
    bad = np.nonzero(vals <= floor)[0]
    if bad.size:
        t_bad = float(ts[bad[0]])
        raise AlphaZeroCrossing(
            f"|alpha(t)| <= {floor:.3g} near t={t_bad:.9g} inside [{w.t0}, {w.t1}]", t_bad
        )


@dataclass(frozen=True)
class AuxiliarySolution:
    """Bundle of the regime-resolved evaluators for one parameter set."""

    params: PhysParams

    def alpha(self, t):
        return alpha(t, self.params)

    def alpha_dot(self, t):
        return alpha_dot(t, self.params)

    def alpha_ddot(self, t):
        return alpha_ddot(t, self.params)

    def lam(self, t):
        return lambda_derivs(t, self.params)[0]

    def lambda_derivs(self, t):
        return lambda_derivs(t, self.params)

    def validate(self, w: TimeWindow) -> None:
        validate_interval(w, self.params)
