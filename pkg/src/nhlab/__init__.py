"""Numerical laboratory for a solvable class of time-dependent non-Hermitian
Hamiltonians: exact squeezed-state solutions, metric-operator machinery, a
direct Crank-Nicolson propagator, and metric-weighted uncertainty relations.
"""

from .analytic import AnalyticState, energy_ho, inverted_eigenvalue, psi_harmonic, psi_inverted, rho_shift
from .auxsolve import AuxiliarySolution, alpha, lambda_derivs, omega_sq_residual, validate_interval
from .gridops import (
    MetricWeights,
    ObservableReport,
    WaveGrid,
    apply_exp_alpha_p,
    apply_F,
    eta_density,
    eta_norm,
    inner_eta_tilde,
    metric_alpha,
    moment,
    uncertainty_report,
)
from .params import Branch, GridSpec, PhysParams, Regime, TimeWindow, validate_params
from .propagate import PropagationControls, Trajectory, evolve, step
from .specfun import eigenstate_ho, eigenstate_inverted, hermite, ho_norm
from .verify import SuiteReport, run_all, run_suite

__all__ = [
    "AnalyticState",
    "AuxiliarySolution",
    "Branch",
    "GridSpec",
    "MetricWeights",
    "ObservableReport",
    "PhysParams",
    "PropagationControls",
    "Regime",
    "SuiteReport",
    "TimeWindow",
    "Trajectory",
    "WaveGrid",
    "alpha",
    "apply_F",
    "apply_exp_alpha_p",
    "eigenstate_ho",
    "eigenstate_inverted",
    "energy_ho",
    "eta_density",
    "eta_norm",
    "evolve",
    "hermite",
    "ho_norm",
    "inner_eta_tilde",
    "inverted_eigenvalue",
    "lambda_derivs",
    "metric_alpha",
    "moment",
    "omega_sq_residual",
    "psi_harmonic",
    "psi_inverted",
    "rho_shift",
    "run_all",
    "run_suite",
    "step",
    "uncertainty_report",
    "validate_interval",
    "validate_params",
]

__version__ = "0.1.0"
