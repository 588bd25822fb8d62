"""Direct Crank-Nicolson integration of the original non-Hermitian TDSE,

    i hbar d psi/dt = -hbar^2/(2 m0 lambda(t)) psi_xx + i sqrt(lambda(t)) x psi,

as an independent check on the analytic solutions.  Second-order central
differences in space with homogeneous Dirichlet ends, midpoint evaluation of
lambda in time (keeps the scheme second order), tridiagonal solves per step.

The complex linear potential makes the plain L2 norm a diagnostic rather
than an invariant; the trajectory records both it and the metric norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from . import auxsolve, gridops
from .errors import BoundaryLeak, StepCollapse
from .params import PhysParams, TimeWindow
from .gridops import WaveGrid


@dataclass(frozen=True)
class PropagationControls:
    dt: float = 1e-3
    substep_trigger: float = 0.25   # halve when |lambda'/lambda| * dt exceeds this
    max_halvings: int = 20
    record_every: int = 100

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not 0 <= self.max_halvings <= 20:
            raise ValueError(f"max_halvings must be in [0, 20], got {self.max_halvings}")
        if self.record_every < 1:
            raise ValueError(f"record_every must be >= 1, got {self.record_every}")


@dataclass
class Trajectory:
    times: list[float] = field(default_factory=list)
    states: list[WaveGrid] = field(default_factory=list)
    eta_norms: list[float] = field(default_factory=list)
    plain_norms: list[float] = field(default_factory=list)

    def record(self, state: WaveGrid, t: float, p: PhysParams) -> None:
        self.times.append(t)
        self.states.append(state)
        self.eta_norms.append(gridops.eta_norm(state, t, p))
        self.plain_norms.append(gridops.l2_norm(state))


def _cn_core(amplitudes: np.ndarray, x: np.ndarray, dx: float, dt: float,
             kinetic_coeff: float, potential: np.ndarray, hbar: float) -> np.ndarray:
    """One Crank-Nicolson step for H = -kinetic_coeff d_xx + diag(potential).

    Solves (I + i dt/(2 hbar) H) psi_new = (I - i dt/(2 hbar) H) psi_old with
    Dirichlet rows pinning the boundary samples to zero.
    """
    n = x.size
    c = 1j * dt / (2.0 * hbar)
    diag = 2.0 * kinetic_coeff / dx**2 + potential
    off = -kinetic_coeff / dx**2

    rhs = amplitudes - c * diag * amplitudes
    rhs[1:-1] -= c * off * (amplitudes[2:] + amplitudes[:-2])
    rhs[0] = 0.0
    rhs[-1] = 0.0

    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = c * off
    ab[1, :] = 1.0 + c * diag
    ab[2, :-1] = c * off
    ab[0, 1] = 0.0
    ab[2, -2] = 0.0
    ab[1, 0] = 1.0
    ab[1, -1] = 1.0
    return solve_banded((1, 1), ab, rhs)


def _leak_check(amplitudes: np.ndarray, t: float) -> None:
    amp = np.abs(amplitudes)
    peak = amp.max()
    if peak > 0.0 and max(amp[0], amp[-1]) > gridops.BOUNDARY_RATIO * peak:
        raise BoundaryLeak(f"boundary amplitude exceeded threshold at t={t:.6g}", t)


def step(state: WaveGrid, t: float, dt: float, p: PhysParams) -> WaveGrid:
    """Advance one Crank-Nicolson step from t to t+dt (midpoint lambda)."""
    if dt == 0.0:
        return state.with_amplitudes(state.amplitudes.copy(), t)
    x = state.spec.points()
    lam, _, _ = auxsolve.lambda_derivs(t + 0.5 * dt, p)
    potential = 1j * np.sqrt(lam) * x
    out = _cn_core(state.amplitudes, x, state.spec.dx, dt,
                   p.hbar**2 / (2.0 * p.m0 * lam), potential, p.hbar)
    _leak_check(out, t + dt)
    return state.with_amplitudes(out, t + dt)


def _advance(state: WaveGrid, t: float, dt: float, p: PhysParams,
             controls: PropagationControls, depth: int = 0) -> WaveGrid:
    """Recursive substepping: halve dt while the mass profile moves too fast."""
    lam, lamd, _ = auxsolve.lambda_derivs(t + 0.5 * dt, p)
    if abs(lamd / lam) * dt > controls.substep_trigger:
        if depth >= controls.max_halvings:
            raise StepCollapse(
                f"exceeded {controls.max_halvings} halvings at t={t:.6g} (dt={dt:.3g})"
            )
        half = 0.5 * dt
        mid = _advance(state, t, half, p, controls, depth + 1)
        return _advance(mid, t + half, half, p, controls, depth + 1)
    return step(state, t, dt, p)


def evolve(initial: WaveGrid, window: TimeWindow, controls: PropagationControls,
           p: PhysParams) -> Trajectory:
    """March the TDSE across the window, recording snapshots and both norms."""
    auxsolve.validate_interval(window, p)
    _leak_check(initial.amplitudes, window.t0)

    n_steps = max(1, int(round((window.t1 - window.t0) / controls.dt)))
    dt = (window.t1 - window.t0) / n_steps

    traj = Trajectory()
    state = initial.with_amplitudes(np.asarray(initial.amplitudes, dtype=complex), window.t0)
    traj.record(state, window.t0, p)
    for s in range(n_steps):
        t = window.t0 + s * dt
        state = _advance(state, t, dt, p, controls)
        if (s + 1) % controls.record_every == 0 or s == n_steps - 1:
            traj.record(state, window.t0 + (s + 1) * dt, p)
    return traj
