"""Consumption calculus: consumed distance and time, bendable wavelength,
anticipated phase velocity, motion-stretch and worldline classification.

All functions take SI magnitudes (floats) or :class:`~biovi.quantity.Quantity`
values, angles in radians, and return Quantities.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import quantity as qty
from .errors import (
    DomainError,
    NegativeSpeed,
    ShapeMismatch,
    ZeroArea,
    ZeroConsumedTime,
    ZeroFrequency,
    ZeroMetricCoefficient,
    ZeroTime,
    ZeroVelocity,
    ZeroWavelength,
)
from .quantity import (
    AREA,
    FREQUENCY,
    LENGTH,
    TIME,
    VELOCITY,
    Quantity,
    coerce,
)

C = qty.SPEED_OF_LIGHT
UNIT_TIME = 1.0  # u(t) = 1 s
LIGHTLIKE_TOLERANCE = 1e-12


class Regime(enum.Enum):
    CONSUMED_ZERO = "ConsumedZero"
    CONSUMING_POSSIBLE = "ConsumingPossible"


@dataclass(frozen=True)
class ConsumptionState:
    """Newtonian time ``t``, consumed time ``t_cons`` and the increment epsilon."""

    t: float
    t_cons: float
    epsilon: float = 0.5
    regime: Regime = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "t", coerce(self.t, TIME, "t"))
        object.__setattr__(self, "t_cons", coerce(self.t_cons, TIME, "t_cons"))
        eps = coerce(self.epsilon, TIME, "epsilon")
        if not 0.0 < eps < 1.0:
            raise DomainError(f"epsilon must lie strictly inside (0, 1) s, got {eps!r}")
        object.__setattr__(self, "epsilon", eps)
        regime = Regime.CONSUMED_ZERO if self.t_cons >= self.t else Regime.CONSUMING_POSSIBLE
        object.__setattr__(self, "regime", regime)


def consumed_distance(v_rgb, state: ConsumptionState) -> Quantity:
    """x_cons = v_rgb * t_cons, or exactly zero once t_cons has caught up with t."""
    v = coerce(v_rgb, VELOCITY, "v_rgb")
    if v < 0:
        raise NegativeSpeed("pixel velocity must be non-negative")
    if state.regime is Regime.CONSUMED_ZERO:
        return Quantity(0.0, LENGTH)
    return Quantity(v * state.t_cons, LENGTH)


def bendable_wavelength(v_w, t, nu, t_cons) -> Quantity:
    """v_w * t / (nu * t_cons); the classical v_w / nu when t == t_cons."""
    v_w = coerce(v_w, VELOCITY, "v_w")
    t = coerce(t, TIME, "t")
    nu = coerce(nu, FREQUENCY, "nu")
    t_cons = coerce(t_cons, TIME, "t_cons")
    if nu == 0:
        raise ZeroFrequency("frequency must be non-zero")
    if t_cons == 0:
        raise ZeroConsumedTime("consumed time must be non-zero")
    if t == t_cons:
        return Quantity(v_w / nu, LENGTH)
    return Quantity(v_w * t / (nu * t_cons), LENGTH)


@dataclass(frozen=True)
class PhaseVelocity:
    abs_vp: Quantity  # c^2 / v
    full_vp: Quantity  # |v_p| + c
    c_cons: Quantity  # c - v, when v is a pixel velocity


def anticipated_phase_velocity(v) -> PhaseVelocity:
    v = coerce(v, VELOCITY, "v")
    if v == 0:
        raise ZeroVelocity("particle speed must be non-zero")
    if v < 0:
        raise NegativeSpeed("particle speed must be positive")
    abs_vp = C * C / v
    return PhaseVelocity(
        abs_vp=Quantity(abs_vp, VELOCITY),
        full_vp=Quantity(abs_vp + C, VELOCITY),
        c_cons=Quantity(C - v, VELOCITY),
    )


def wavenumber_modulus(wavelength) -> Quantity:
    """Modulus of the contour wavenumber j/lambda; the imaginary phase is dropped."""
    lam = coerce(wavelength, LENGTH, "lambda")
    if lam == 0:
        raise ZeroWavelength("wavelength must be non-zero")
    return Quantity(abs(1.0 / lam), LENGTH.inverse())


def motion_stretch(v_k, x_mag, y_mag, theta: float, dt=UNIT_TIME) -> Quantity:
    """x_k = v_k |x| |y| cos(theta) / (c^2 dt).

    Signed lengths are accepted as-is (the worked problems feed a signed
    displacement difference through this).
    """
    v_k = coerce(v_k, VELOCITY, "v_k")
    x = coerce(x_mag, LENGTH, "x_mag")
    y = coerce(y_mag, LENGTH, "y_mag")
    dt = coerce(dt, TIME, "dt")
    if dt <= 0:
        raise ZeroTime("time interval must be positive")
    return Quantity(v_k * x * y * math.cos(theta) / (C * C * dt), LENGTH)


def motion_stretch_general(
    x_cons,
    x_mag,
    y_mag,
    theta: float,
    g: float = 1.0,
    time_mode: str = "unit_time",
    t=None,
    use_sin: bool = False,
    t_planck: Optional[float] = None,
) -> Quantity:
    """Curvature-indexed motion-stretch x_cons |x| |y| trig(theta) / (2 g D).

    ``time_mode="unit_time"`` uses D = c^2 * 1 s; ``"planck_product"`` uses
    D = c^2 * t * t_P and requires ``t``.  ``use_sin`` swaps the cosine for the
    sine of the cross-product magnitude.  ``t_planck`` overrides the stored
    Planck time (the worked problems print a rounded value).

    In ``unit_time`` mode the result carries m*s, not m; checked mode refuses
    that, paper-faithful mode warns and labels it as a length.
    """
    xc = coerce(x_cons, LENGTH, "x_cons")
    x = coerce(x_mag, LENGTH, "x_mag")
    y = coerce(y_mag, LENGTH, "y_mag")
    if g == 0:
        raise ZeroMetricCoefficient("metric coefficient g must be non-zero")
    trig = math.sin(theta) if use_sin else math.cos(theta)
    tp = qty.PLANCK_TIME if t_planck is None else float(t_planck)
    if time_mode == "unit_time":
        denom = C * C * UNIT_TIME
        denom_dim = VELOCITY ** 2 * TIME
    elif time_mode == "planck_product":
        if t is None:
            raise ZeroTime("planck_product mode needs a Newtonian time t")
        t = coerce(t, TIME, "t")
        if t <= 0:
            raise ZeroTime("Newtonian time must be positive")
        denom = C * C * t * tp
        denom_dim = VELOCITY ** 2 * TIME ** 2
    else:
        raise ValueError(f"unknown time_mode {time_mode!r}")
    result_dim = LENGTH ** 3 / denom_dim
    if result_dim != LENGTH:
        qty.report_mismatch(result_dim, LENGTH, f"motion_stretch_general[{time_mode}]")
    return Quantity(xc * x * y * trig / (2.0 * g * denom), LENGTH)


def geodesic_triangle_sum(curvature, area) -> float:
    """Interior angle sum pi + K*A of a geodesic triangle of constant curvature (rad)."""
    K = coerce(curvature, AREA.inverse(), "K")
    A = coerce(area, AREA, "A")
    return math.pi + K * A


class WorldlineKind(enum.Enum):
    TIMELIKE = "Timelike"
    SPACELIKE = "Spacelike"
    LIGHTLIKE = "Lightlike"


@dataclass(frozen=True)
class WorldlineClass:
    kind: WorldlineKind
    ds_squared: Optional[Quantity] = None
    consumed_length: Optional[Quantity] = None


def worldline_classify(v, ds_sq_cons=None) -> WorldlineClass:
    """Timelike for v < c, spacelike for v > c, lightlike within |v-c|/c < 1e-12."""
    v = coerce(v, VELOCITY, "v")
    if v < 0:
        raise NegativeSpeed("speed must be non-negative")
    if abs(v - C) / C < LIGHTLIKE_TOLERANCE:
        kind = WorldlineKind.LIGHTLIKE
    elif v < C:
        kind = WorldlineKind.TIMELIKE
    else:
        kind = WorldlineKind.SPACELIKE
    if ds_sq_cons is None:
        return WorldlineClass(kind)
    ds2 = coerce(ds_sq_cons, AREA, "ds_sq_cons")
    return WorldlineClass(kind, Quantity(ds2, AREA), Quantity(math.sqrt(abs(ds2)), LENGTH))


@dataclass(frozen=True)
class CrossMatrix:
    """Determinant layout with the basis-label row last, plus the cofactor vector."""

    rows: tuple  # n numeric rows followed by the label row
    vector: np.ndarray

    @property
    def n(self) -> int:
        return len(self.rows) - 1


def generalized_cross_matrix(vectors: Sequence[Sequence[float]], basis_labels: Sequence[str] | None = None) -> CrossMatrix:
    """Generalised cross product of n vectors in R^(n+1).

    Component j is the cofactor of the basis entry e_j in the last row, so
    the ordered set (v_1, ..., v_n, result) is positively oriented.
    """
    arr = np.asarray(vectors, dtype=float)
    if arr.ndim != 2:
        raise ShapeMismatch("expected a 2-D array of row vectors")
    n, width = arr.shape
    if n < 2 or width != n + 1:
        raise ShapeMismatch(f"need n >= 2 vectors of length n+1, got {n} of length {width}")
    if basis_labels is None:
        basis_labels = [f"e{j + 1}" for j in range(width)]
    if len(basis_labels) != width:
        raise ShapeMismatch(f"need {width} basis labels, got {len(basis_labels)}")
    last = n  # 0-based index of the basis row in the (n+1)x(n+1) layout
    out = np.empty(width)
    for j in range(width):
        minor = np.delete(arr, j, axis=1)
        out[j] = (-1) ** (last + j) * np.linalg.det(minor)
    rows = tuple(tuple(r) for r in arr.tolist()) + (tuple(basis_labels),)
    return CrossMatrix(rows=rows, vector=out)


@dataclass(frozen=True)
class PostKinematic:
    nu_post: Quantity
    delta_K: Optional[Quantity] = None


def post_kinematic_frequency(chi_squared, nu_pre=None) -> PostKinematic:
    """nu_post = c^2 u(t) / X^2 and, if given nu_pre, K(nu) = nu_post - nu_pre."""
    chi2 = coerce(chi_squared, AREA, "chi_squared")
    if chi2 <= 0:
        raise ZeroArea("effective area must be positive")
    nu_post = C * C * UNIT_TIME / chi2
    delta = None
    if nu_pre is not None:
        delta = Quantity(nu_post - coerce(nu_pre, FREQUENCY, "nu_pre"), FREQUENCY)
    return PostKinematic(Quantity(nu_post, FREQUENCY), delta)
