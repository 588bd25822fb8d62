"""Physical and numerical configuration shared by all other modules.

A model instance is fixed by ``PhysParams``: the mass scale m0, hbar, the
regime (harmonic or inverted effective oscillator), its frequency, and the
two coefficients of the auxiliary solution alpha(t).  All values are
immutable after validation and safe to share across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ComplexLambda, ConfigError, NonPositiveScale, ZeroAuxiliary


class Regime(enum.Enum):
    HARMONIC = "harmonic"
    INVERTED = "inverted"


class Branch(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return +1 if self is Branch.PLUS else -1


# |coeffB - conj(coeffA)| below this (relative) is treated as round-off and coerced.
_CONJ_RTOL = 1e-12


@dataclass(frozen=True)
class PhysParams:
    """Configuration of one model instance.

    ``freq`` is the constant effective frequency: Omega0 in the harmonic
    regime, omega0 in the inverted one.  ``coeff_a``/``coeff_b`` are the
    coefficients of alpha(t); the harmonic regime requires
    coeff_b = conj(coeff_a) so that alpha(t), and with it the mass profile
    lambda(t) = alpha(t)^2, stays real.
    """

    m0: float
    freq: float
    regime: Regime = Regime.HARMONIC
    coeff_a: complex = 0.5 + 0.0j
    coeff_b: complex = 0.5 + 0.0j
    hbar: float = 1.0
    n: int = 0
    energy_inverted: complex = 0.0 + 0.0j
    branch_inverted: Branch = Branch.PLUS


def validate_params(raw: PhysParams) -> PhysParams:
    """Return a validated (possibly coerced) copy of ``raw``.

    Raises
    ------
    NonPositiveScale
        if m0, hbar or freq is not strictly positive.
    ComplexLambda
        if the harmonic coefficients are not conjugates within round-off.
    ZeroAuxiliary
        if both coefficients vanish (alpha identically zero).
    """
    if not (raw.m0 > 0 and math.isfinite(raw.m0)):
        raise NonPositiveScale(f"m0 must be positive, got {raw.m0}")
    if not (raw.hbar > 0 and math.isfinite(raw.hbar)):
        raise NonPositiveScale(f"hbar must be positive, got {raw.hbar}")
    if not (raw.freq > 0 and math.isfinite(raw.freq)):
        raise NonPositiveScale(f"freq must be positive, got {raw.freq}")
    if raw.n < 0 or raw.n != int(raw.n):
        raise ConfigError(f"quantum number n must be a non-negative integer, got {raw.n}")

    a = complex(raw.coeff_a)
    b = complex(raw.coeff_b)
    if a == 0 and b == 0:
        raise ZeroAuxiliary("coeff_a and coeff_b are both zero")

    if raw.regime is Regime.HARMONIC:
        scale = max(abs(a), abs(b))
        if abs(b - a.conjugate()) > _CONJ_RTOL * max(1.0, scale):
            raise ComplexLambda(
                f"harmonic regime needs coeff_b = conj(coeff_a); "
                f"got coeff_a={a}, coeff_b={b}"
            )
        if a == 0:
            raise ZeroAuxiliary("harmonic regime with coeff_a = 0 gives alpha(t) = 0")
        return replace(raw, coeff_a=a, coeff_b=a.conjugate())

    # inverted regime: both coefficients real
    scale = max(abs(a), abs(b), 1.0)
    if abs(a.imag) > _CONJ_RTOL * scale or abs(b.imag) > _CONJ_RTOL * scale:
        raise ComplexLambda(
            f"inverted regime needs real coefficients; got coeff_a={a}, coeff_b={b}"
        )
    return replace(raw, coeff_a=complex(a.real, 0.0), coeff_b=complex(b.real, 0.0))


@dataclass(frozen=True)
class GridSpec:
    """Uniform spatial grid; propagation applies homogeneous Dirichlet ends."""

    x_min: float
    x_max: float
    num_points: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ConfigError(f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if self.num_points < 16:
            raise ConfigError(f"num_points must be >= 16, got {self.num_points}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.num_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.num_points)


@dataclass(frozen=True)
class TimeWindow:
    """Evolution interval [t0, t1] with a ceiling on the base time step."""

    t0: float
    t1: float
    max_step: float = 1e-3

    def __post_init__(self):
        if not self.t0 < self.t1:
            raise ConfigError(f"need t0 < t1, got [{self.t0}, {self.t1}]")
        if not self.max_step > 0:
            raise ConfigError(f"max_step must be positive, got {self.max_step}")


def _as_complex(value, field: str) -> complex:
    """Accept a real number or a [re, im] pair from JSON."""
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
        isinstance(v, (int, float)) for v in value
    ):
        return complex(value[0], value[1])
    raise ConfigError(f"field {field!r} must be a number or a [re, im] pair, got {value!r}")


def _check_keys(doc: dict, allowed: dict, where: str) -> None:
    unknown = set(doc) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")


def physparams_from_dict(doc: dict) -> PhysParams:
    """Build and validate PhysParams from a JSON-style mapping; unknown keys rejected."""
    allowed = {
        "m0": float,
        "hbar": float,
        "regime": str,
        "freq": float,
        "coeffA": None,
        "coeffB": None,
        "n": int,
        "energyInverted": None,
        "branchInverted": str,
    }
    _check_keys(doc, allowed, "params")
    try:
        regime = Regime(str(doc.get("regime", "harmonic")).lower())
    except ValueError as exc:
        raise ConfigError(f"unknown regime {doc.get('regime')!r}") from exc
    try:
        branch = Branch(str(doc.get("branchInverted", "plus")).lower())
    except ValueError as exc:
        raise ConfigError(f"unknown branchInverted {doc.get('branchInverted')!r}") from exc
    raw = PhysParams(
        m0=float(doc.get("m0", 1.0)),
        hbar=float(doc.get("hbar", 1.0)),
        regime=regime,
        freq=float(doc.get("freq", 1.0)),
        coeff_a=_as_complex(doc.get("coeffA", 0.5), "coeffA"),
        coeff_b=_as_complex(doc.get("coeffB", 0.5), "coeffB"),
        n=int(doc.get("n", 0)),
        energy_inverted=_as_complex(doc.get("energyInverted", 0.0), "energyInverted"),
        branch_inverted=branch,
    )
    return validate_params(raw)


def gridspec_from_dict(doc: dict) -> GridSpec:
    _check_keys(doc, {"xMin": 0, "xMax": 0, "numPoints": 0}, "grid")
    return GridSpec(
        x_min=float(doc.get("xMin", -14.0)),
        x_max=float(doc.get("xMax", 14.0)),
        num_points=int(doc.get("numPoints", 2048)),
    )


def timewindow_from_dict(doc: dict) -> TimeWindow:
    _check_keys(doc, {"t0": 0, "t1": 0, "maxStep": 0}, "window")
    return TimeWindow(
        t0=float(doc.get("t0", 0.0)),
        t1=float(doc.get("t1", 1.0)),
        max_step=float(doc.get("maxStep", 1e-3)),
    )
