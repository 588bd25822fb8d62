"""Exact solutions of the time-dependent problem.

The original Hamiltonian H(t) = p^2/(2 m0 lambda(t)) + i sqrt(lambda(t)) x is
mapped by the unitary F(t) (chirp times dilation, see gridops) onto a
time-independent non-Hermitian oscillator; undoing the map on a stationary
state of the similarity-transformed Hermitian oscillator gives squeezed
states with complex-shifted Hermite polynomials:

    psi_n(x, t) = lambda^{1/4} exp[-i m0 lambda' x^2 / (4 hbar)]
                  exp[-i E t / hbar] phi_n(sqrt(lambda) x + shift)

where shift = +i/(m0 Omega0^2) in the harmonic regime (from rho^{-1} with
rho = exp[p/(hbar m0 Omega0^2)]) and -i/(m0 omega0^2) in the inverted one.
The assembled states satisfy the original TDSE to finite-difference
accuracy; the test suite checks the residual directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import auxsolve, specfun
from .params import Branch, PhysParams, Regime


@dataclass(frozen=True)
class AnalyticState:
    """One exact solution: parameters plus the quantum-number/branch labels.

    ``n``, ``branch`` and ``energy`` default to the values carried by
    ``params``; the inverted-regime phase factor uses ``energy`` verbatim.
    """

    params: PhysParams
    n: int | None = None
    branch: Branch | None = None
    energy: complex | None = None

    @property
    def level(self) -> int:
        return self.params.n if self.n is None else self.n

    @property
    def branch_resolved(self) -> Branch:
        return self.params.branch_inverted if self.branch is None else self.branch

    @property
    def energy_resolved(self) -> complex:
        if self.params.regime is Regime.HARMONIC:
            return complex(energy_ho(self.level, self.params))
        if self.energy is None:
            return complex(self.params.energy_inverted)
        return complex(self.energy)


def energy_ho(n: int, p: PhysParams) -> float:
    """Harmonic-regime eigenvalue hbar Omega0 (n + 1/2) + 1/(2 m0 Omega0^2)."""
    return p.hbar * p.freq * (n + 0.5) + 1.0 / (2.0 * p.m0 * p.freq**2)


def inverted_eigenvalue(n: int, branch: Branch, p: PhysParams) -> complex:
    """Generalized eigenvalue of the Hermite-form inverted-oscillator state.

    The plus/minus branches carry +/- i hbar omega0 (n + 1/2), shifted by the
    constant -1/(2 m0 omega0^2) produced by the similarity transformation.
    With this value the assembled psi_inverted solves the original TDSE.
    """
    return branch.sign * 1j * p.hbar * p.freq * (n + 0.5) - 1.0 / (2.0 * p.m0 * p.freq**2)


def rho_shift(direction: int, p: PhysParams) -> complex:
    """Position shift implementing rho^direction on entire functions.

    exp[a p] f(x) = f(x - i a hbar); the regime metric roots are
    rho = exp[+p/(hbar m0 Omega0^2)] (harmonic) and
    rho_i = exp[-p/(hbar m0 omega0^2)] (inverted), so e.g. rho^{-1} in the
    harmonic regime shifts by +i/(m0 Omega0^2).
    """
    if direction not in (-1, 0, +1):
        raise ValueError(f"direction must be -1, 0 or +1, got {direction}")
    if direction == 0:
        return 0.0 + 0.0j
    sign = 1.0 if p.regime is Regime.HARMONIC else -1.0
    return -1j * direction * sign / (p.m0 * p.freq**2)


def _prefactors(x, t: float, p: PhysParams):
    lam, lamd, _ = auxsolve.lambda_derivs(t, p)
    chirp = np.exp(-1j * p.m0 * lamd * np.asarray(x, dtype=float) ** 2 / (4.0 * p.hbar))
    return lam, lam**0.25 * chirp


def psi_harmonic(x, t: float, s: AnalyticState):
    """Exact squeezed-state solution psi_n(x, t), harmonic regime."""
    p = s.params
    if p.regime is not Regime.HARMONIC:
        raise ValueError("psi_harmonic requires harmonic-regime parameters")
    lam, pref = _prefactors(x, t, p)
    phase = np.exp(-1j * energy_ho(s.level, p) * t / p.hbar)
    arg = np.sqrt(lam) * np.asarray(x, dtype=float) + rho_shift(-1, p)
    val = pref * phase * specfun.eigenstate_ho(s.level, arg, p)
    return val if np.ndim(val) else complex(val)


def psi_inverted(x, t: float, s: AnalyticState):
    """Exact solution, inverted regime; the phase uses ``s.energy`` verbatim.

    The state solves the TDSE only when the energy equals
    ``inverted_eigenvalue(n, branch, params)``; any other value is applied
    as-is (the label is a free input for this non-normalizable family).
    """
    p = s.params
    if p.regime is not Regime.INVERTED:
        raise ValueError("psi_inverted requires inverted-regime parameters")
    lam, pref = _prefactors(x, t, p)
    phase = np.exp(-1j * s.energy_resolved * t / p.hbar)
    arg = np.sqrt(lam) * np.asarray(x, dtype=float) + rho_shift(-1, p)
    val = pref * phase * specfun.eigenstate_inverted(s.level, arg, s.branch_resolved, p)
    return val if np.ndim(val) else complex(val)


def psi(x, t: float, s: AnalyticState):
    """Regime dispatch for the exact solution."""
    if s.params.regime is Regime.HARMONIC:
        return psi_harmonic(x, t, s)
    return psi_inverted(x, t, s)
