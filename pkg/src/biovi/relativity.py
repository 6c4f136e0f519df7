"""Lorentz factor/force/power, consumed proper time, spacetime intervals,
observation-scope products and the body-comparison arithmetic."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import quantity as qty
from .errors import (
    DimensionMismatch,
    DomainError,
    EmptyPath,
    EmptySamples,
    FormatError,
    NegativeRadicand,
    SuperluminalInput,
    WeightSumError,
    ZeroBaseline,
    ZeroInterval,
    ZeroVolume,
)
from .quantity import (
    DENSITY,
    DIMENSIONLESS,
    ENERGY,
    LENGTH,
    MASS,
    TIME,
    VELOCITY,
    VOLUME,
    Dimension,
    Quantity,
    coerce,
)

C = qty.SPEED_OF_LIGHT
CONGRUENCE_TOLERANCE = 1e-9
SIZE_SEPARATION = 1e-2  # "small" means at least two orders of magnitude below


def lorentz_factor(v) -> float:
    v = coerce(v, VELOCITY, "v")
    if v < 0:
        raise DomainError("speed must be non-negative")
    if v >= C:
        raise SuperluminalInput(f"v = {v!r} m/s is not below c")
    beta = v / C
    return 1.0 / math.sqrt(1.0 - beta * beta)


@dataclass(frozen=True)
class ForcePower:
    force: np.ndarray  # N
    power: float  # W


def lorentz_force_power(q, E, B, v) -> ForcePower:
    """F = q(E + v x B) and the work rate q E.v, which no magnetic field can change."""
    charge = coerce(q, qty.CHARGE, "q")
    E = np.asarray(E, dtype=float)
    B = np.asarray(B, dtype=float)
    v = np.asarray(v, dtype=float)
    force = charge * (E + np.cross(v, B))
    power = charge * float(np.dot(E, v))
    return ForcePower(force, power)


@dataclass(frozen=True)
class PathSample:
    t_q: float
    x_q: float = 0.0
    wavelength: float = 0.0
    t_hnu: float = 0.0
    t_cons: float = 1.0
    v_rgb: float = 0.0
    weight: float = 1.0

    def radicand(self) -> float:
        # t_q^2 - x_q^2/c^2 - lambda^2 t_hnu^2/(c^2 t_cons^2) - t_q v_rgb^2/c^2
        photon = 0.0
        if self.wavelength and self.t_hnu:
            photon = (self.wavelength * self.t_hnu) ** 2 / (C * C * self.t_cons ** 2)
        return (
            self.t_q ** 2
            - self.x_q ** 2 / (C * C)
            - photon
            - self.t_q * self.v_rgb ** 2 / (C * C)
        )


def consumed_proper_time(path: Sequence[PathSample]) -> Quantity:
    """Weighted sum of per-sample square roots, in seconds.

    The last radicand term mixes s and s^2; it is summed as written, i.e. the
    radicand is read in the paper-faithful unit convention.
    """
    if not path:
        raise EmptyPath("path has no samples")
    total_weight = math.fsum(s.weight for s in path)
    if abs(total_weight - 1.0) > 1e-12:
        raise WeightSumError(f"weights sum to {total_weight!r}, not 1")
    terms = []
    for i, sample in enumerate(path):
        if sample.weight < 0:
            raise WeightSumError(f"sample {i} has a negative weight")
        r = sample.radicand()
        if r < 0:
            raise NegativeRadicand(i, r)
        terms.append(sample.weight * math.sqrt(r))
    return Quantity(math.fsum(terms), TIME)


def energy_pixel_product(E, v_rgb) -> Quantity:
    """E * v_rgb in J m s^-1, which is the same dimension as kg m^3 s^-3."""
    energy = E if isinstance(E, Quantity) else Quantity(float(E), ENERGY)
    velocity = v_rgb if isinstance(v_rgb, Quantity) else Quantity(float(v_rgb), VELOCITY)
    if energy.dim != ENERGY:
        qty.report_mismatch(energy.dim, ENERGY, "energy_pixel_product.E")
    if velocity.dim != VELOCITY:
        qty.report_mismatch(velocity.dim, VELOCITY, "energy_pixel_product.v_rgb")
    return qty.q_combine(energy, velocity, "multiply")


def spacetime_interval(t, r, convention: str = "paper", additive_constant: float = 0.0) -> Quantity:
    """Squared interval.

    ``convention="paper"`` gives c^2 t^2 - r^2 (signature + - - -);
    ``"eta"`` applies diag(-1, 1, 1, 1) to (ct, x, y, z) and gives the
    negation.  ``r`` may be a scalar distance or a 3-vector.
    ``additive_constant`` is added to r^2 (an arbitrary constant, usually 0).
    """
    t = coerce(t, TIME, "t")
    r_arr = np.atleast_1d(np.asarray(r.magnitude if isinstance(r, Quantity) else r, dtype=float))
    r2 = float(np.dot(r_arr, r_arr)) + additive_constant
    ct = C * t
    timelike = ct * ct - r2
    if convention == "paper":
        return Quantity(timelike, qty.AREA)
    if convention == "eta":
        # x^T diag(-1,1,1,1) x with only |r|^2 entering the spatial part
        return Quantity(-timelike, qty.AREA)
    raise ValueError(f"unknown convention {convention!r}")


def scope_area(r, samples: Iterable[tuple[float, float]]) -> Quantity:
    """Hemisphere factor 4 pi r^2 / 2 times the Riemann sum of s_i^2 dx_i."""
    r = coerce(r, LENGTH, "r")
    if r <= 0:
        raise DomainError("radius must be positive")
    samples = list(samples)
    if not samples:
        raise EmptySamples("scope_area needs at least one (s, dx) sample")
    riemann = math.fsum(s * s * dx for s, dx in samples)
    return Quantity(4.0 * math.pi * r * r / 2.0 * riemann, LENGTH ** 5)


@dataclass(frozen=True)
class ScopeProduct:
    left: Quantity  # V / s^2
    right: Quantity  # V * s^2


def scope_product(V, s, mode: str = "product", r=None, n: int = 1):
    """Observation-scope pair.

    ``mode="product"`` returns ``ScopeProduct(V/s^2, V*s^2)``;
    ``mode="differential"`` returns the pair ``(2 pi r, 2 n pi s^(2n-1))``.
    """
    s_val = coerce(s, LENGTH, "s")
    if s_val == 0:
        raise ZeroInterval("interval s must be non-zero")
    if mode == "product":
        volume = V if isinstance(V, Quantity) else Quantity(float(V), VOLUME)
        interval = Quantity(s_val, LENGTH)
        return ScopeProduct(volume / interval ** 2, volume * interval ** 2)
    if mode == "differential":
        if r is None:
            raise DomainError("differential mode needs r")
        if n < 1:
            raise DomainError("n must be a positive integer")
        r_val = coerce(r, LENGTH, "r")
        return (
            Quantity(2.0 * math.pi * r_val, LENGTH),
            Quantity(2.0 * n * math.pi * s_val ** (2 * n - 1), LENGTH ** (2 * n - 1)),
        )
    raise ValueError(f"unknown mode {mode!r}")


def observation_density(mass_observed, vicinity_volume) -> Quantity:
    m = coerce(mass_observed, MASS, "mass")
    vol = coerce(vicinity_volume, VOLUME, "volume")
    if vol <= 0:
        raise ZeroVolume("vicinity volume must be positive")
    return Quantity(m / vol, DENSITY)


@dataclass(frozen=True)
class BodyRatio:
    ratio_percent: float
    complement_percent: float


Range = tuple


def _as_quantity(value, dim: Optional[Dimension]) -> Quantity:
    if isinstance(value, Quantity):
        return value
    return Quantity(float(value), dim or DIMENSIONLESS)


def body_ratio_percent(small_value, big_value: Union[float, Quantity, Range]) -> BodyRatio:
    """small / mean(big) * 100 %, with the complement 100 % - ratio.

    ``big_value`` may be a (low, high) range; its arithmetic midpoint is used.
    Plain numbers are compared as-is; Quantities must share a dimension.
    """
    small = _as_quantity(small_value, None)
    if isinstance(big_value, tuple):
        lo = _as_quantity(big_value[0], small.dim)
        hi = _as_quantity(big_value[1], small.dim)
        if lo.dim != hi.dim:
            raise DimensionMismatch(lo.dim, hi.dim, "range bounds")
        big = Quantity((lo.magnitude + hi.magnitude) / 2.0, lo.dim)
    else:
        big = _as_quantity(big_value, small.dim)
    if small.dim != big.dim:
        raise DimensionMismatch(small.dim, big.dim, "body_ratio_percent")
    if big.magnitude <= 0:
        raise ZeroBaseline("comparison baseline must be positive")
    ratio = small.magnitude / big.magnitude * 100.0
    return BodyRatio(ratio, 100.0 - ratio)


# --------------------------------------------------------------------------- #
# Bodies
# --------------------------------------------------------------------------- #
@dataclass(frozen=True)
class Body:
    label: str
    kind: str  # "small" or "giant"
    mass: float  # kg
    size: float  # m
    lifespan: float  # s
    volume: float  # m^3
    visually_utilized: bool = True

    def __post_init__(self):
        if self.kind not in ("small", "giant"):
            raise DomainError(f"body kind must be 'small' or 'giant', got {self.kind!r}")
        for name in ("mass", "size", "lifespan", "volume"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} of body {self.label!r} must be positive")


def check_size_separation(small: Body, giant: Body) -> bool:
    """True iff the small body is at least two orders of magnitude below the giant."""
    return small.size <= SIZE_SEPARATION * giant.size


def body_proper_time(t_giant, increments: Sequence[float]) -> tuple[Quantity, Quantity]:
    """tau = t_giant - sum(increments); returns (tau, cons) with cons = tau - t_giant."""
    t = coerce(t_giant, TIME, "t_giant")
    spent = math.fsum(increments)
    return Quantity(t - spent, TIME), Quantity(-spent, TIME)


def congruent(tau, t_giant) -> bool:
    """Congruent-body case: tau vanishes within 1e-9 of the giant's time."""
    return abs(coerce(tau, TIME, "tau")) <= CONGRUENCE_TOLERANCE * abs(coerce(t_giant, TIME, "t_giant"))


BODY_HEADER = ("label", "kind", "mass_kg", "size_m", "lifespan_s", "volume_m3", "visual")


def load_bodies(text: str) -> list[Body]:
    """Read bodies from ``label,kind,mass_kg,size_m,lifespan_s,volume_m3,visual`` CSV."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != BODY_HEADER:
        raise FormatError(f"header must be {','.join(BODY_HEADER)}", 1, 1)
    bodies = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(BODY_HEADER):
            raise FormatError(f"expected {len(BODY_HEADER)} fields, got {len(row)}", lineno, 1)
        values = []
        for col, cell in enumerate(row[2:6], start=3):
            try:
                values.append(float(cell))
            except ValueError:
                raise FormatError(f"not a number: {cell!r}", lineno, col) from None
        if row[6] not in ("1", "0", "true", "false"):
            raise FormatError(f"not a boolean: {row[6]!r}", lineno, 7)
        try:
            bodies.append(Body(row[0], row[1], *values, visually_utilized=row[6] in ("1", "true")))
        except DomainError as exc:
            raise FormatError(str(exc), lineno, 1) from None
    return bodies


# --------------------------------------------------------------------------- #
# Table arithmetic
# --------------------------------------------------------------------------- #
FLY_SIZE = (0.005, 0.007)
MAN_SIZE = (1.5, 1.8)
FLY_MASS = 1.2e-5
MAN_MASS = (61.0, 70.0)
FLY_LIFESPAN = 604800.0
MAN_LIFESPAN = (1.262277e9, 2.366769e9)
PRINTED_SIZE_RATIO = 0.003636  # percent, as printed
PRINTED_SIZE_COMPLEMENT = 99.636


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    ratio_percent: float
    complement_percent: float
    printed_ratio_percent: Optional[float] = None
    printed_consistent: bool = True


def body_comparison_table(consistency_tol: float = 1e-3) -> list[ComparisonRow]:
    """Size, mass and lifespan comparisons of the typical fly against a human.

    The printed size ratio is checked against its own printed complement and
    flagged when the two disagree.
    """
    fly_size = sum(FLY_SIZE) / 2.0
    size = body_ratio_percent(fly_size, MAN_SIZE)
    mass = body_ratio_percent(FLY_MASS, MAN_MASS)
    life = body_ratio_percent(FLY_LIFESPAN, MAN_LIFESPAN)
    printed_ok = abs((100.0 - PRINTED_SIZE_RATIO) - PRINTED_SIZE_COMPLEMENT) <= consistency_tol * PRINTED_SIZE_COMPLEMENT * 1e-2
    return [
        ComparisonRow("size", size.ratio_percent, size.complement_percent, PRINTED_SIZE_RATIO, printed_ok),
        ComparisonRow("mass", mass.ratio_percent, mass.complement_percent, 1.832061e-5, True),
        ComparisonRow("lifespan", life.ratio_percent, life.complement_percent, 0.03333107, True),
    ]
