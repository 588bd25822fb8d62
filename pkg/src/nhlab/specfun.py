"""Special functions for the analytic solutions: Hermite polynomials at
complex argument and oscillator eigenfunctions evaluated off the real line.

The oscillator eigenfunctions are entire (Gaussian times polynomial), so a
complex position argument is evaluated directly; no analytic-continuation
machinery is needed.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DegreeOutOfRange
from .params import Branch, PhysParams

# Upward recurrence is stable for polynomials; the cap guards 2^n n! overflow
# in the normalization constant.
MAX_DEGREE = 64


def _check_degree(n: int) -> None:
    if not (0 <= n <= MAX_DEGREE):
        raise DegreeOutOfRange(f"Hermite degree must be in [0, {MAX_DEGREE}], got {n}")


def hermite(n: int, z):
    """Physicists' Hermite polynomial H_n(z) for complex scalar or array z.

    Upward recurrence H_{k+1} = 2 z H_k - 2 k H_{k-1} from H_0 = 1, H_1 = 2z.
    """
    _check_degree(n)
    z = np.asarray(z, dtype=complex)
    h_prev = np.ones_like(z)
    if n == 0:
        return h_prev if h_prev.ndim else h_prev[()]
    h_cur = 2.0 * z
    for k in range(1, n):
        h_prev, h_cur = h_cur, 2.0 * z * h_cur - 2.0 * k * h_prev
    return h_cur if h_cur.ndim else h_cur[()]


def ho_norm(n: int, p: PhysParams) -> float:
    """Normalization prefactor [ (m0 freq / (pi hbar))^(1/2) / (n! 2^n) ]^(1/2)."""
    _check_degree(n)
    root = math.sqrt(p.m0 * p.freq / (math.pi * p.hbar))
    return math.sqrt(root / (math.factorial(n) * 2.0**n))


def eigenstate_ho(n: int, x, p: PhysParams):
    """Harmonic-oscillator eigenfunction phi_n at (possibly complex) x.

    phi_n(x) = N exp[-m0 Omega0 x^2 / (2 hbar)] H_n(x sqrt(m0 Omega0 / hbar)).
    """
    _check_degree(n)
    z = np.asarray(x, dtype=complex)
    kappa = math.sqrt(p.m0 * p.freq / p.hbar)
    val = ho_norm(n, p) * np.exp(-p.m0 * p.freq * z**2 / (2.0 * p.hbar)) * hermite(n, kappa * z)
    return val if val.ndim else val[()]


def eigenstate_inverted(n: int, x, branch: Branch, p: PhysParams):
    """Inverted-oscillator generalized eigenfunction (unit prefactor convention).

    phi_n^i(x) = exp[-s i m0 omega0 x^2/(2 hbar)] H_n(x e^{s i pi/4} sqrt(m0 omega0/hbar))
    with s = +1 for the plus branch and s = -1 for the minus branch.  These
    functions are not square integrable; any constant prefactor works, and
    unity keeps results reproducible.
    """
    _check_degree(n)
    s = branch.sign
    z = np.asarray(x, dtype=complex)
    kappa = math.sqrt(p.m0 * p.freq / p.hbar)
    rot = np.exp(s * 1j * math.pi / 4.0)
    val = np.exp(-s * 1j * p.m0 * p.freq * z**2 / (2.0 * p.hbar)) * hermite(n, rot * kappa * z)
    return val if val.ndim else val[()]
