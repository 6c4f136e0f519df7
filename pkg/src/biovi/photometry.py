"""Photometric quantities: photon energy, luminance and its frequency, the
flux forms measured in kg s^-3, scene frame accounting and volume change."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional

from . import quantity as qty
from .errors import (
    EmptySamples,
    FormatError,
    GrazingAngle,
    NegativeFrequency,
    OddCenterCount,
    SceneTooSmall,
    ZeroArea,
    ZeroDenominator,
    ZeroMean,
    ZeroSolidAngle,
    ZeroTime,
    ZeroTimeSpan,
)
from .quantity import (
    AREA,
    CURRENT,
    DIMENSIONLESS,
    ENERGY,
    FREQUENCY,
    IRRADIANCE,
    LENGTH,
    LUMINANCE,
    LUMINOUS_FLUX,
    SOLID_ANGLE,
    TIME,
    VELOCITY,
    VOLTAGE,
    VOLUME,
    Quantity,
    coerce,
)
from .relativity import energy_pixel_product

# grazing-angle guard: cos(theta) must exceed this to count as positive
COS_EPSILON = 1e-15


def photon_energy(nu) -> Quantity:
    """E = h nu in joules."""
    nu = coerce(nu, FREQUENCY, "nu")
    if nu < 0:
        raise NegativeFrequency("frequency must be non-negative")
    return Quantity(qty.PLANCK * nu, ENERGY)


def luminance(F, A, Omega, theta: float) -> Quantity:
    """F / (A Omega cos theta) in cd m^-2; theta in radians."""
    flux = coerce(F, LUMINOUS_FLUX, "F")
    area = coerce(A, AREA, "A")
    omega = coerce(Omega, SOLID_ANGLE, "Omega")
    cos = math.cos(theta)
    if cos <= COS_EPSILON:
        raise GrazingAngle(f"cos(theta) = {cos!r} is not positive")
    if area <= 0:
        raise ZeroArea("area must be positive")
    if omega <= 0:
        raise ZeroSolidAngle("solid angle must be positive")
    # lm / (m^2 sr) = cd m^-2 once the steradian is erased
    return Quantity(flux / (area * omega * cos), LUMINANCE)


@dataclass(frozen=True)
class LuminanceSampleSet:
    L_samples: tuple  # cd m^-2
    t_samples: tuple  # s
    delta_L: Optional[float] = None  # cd m^-2; max - min when None

    def __post_init__(self):
        object.__setattr__(self, "L_samples", tuple(float(x) for x in self.L_samples))
        object.__setattr__(self, "t_samples", tuple(float(x) for x in self.t_samples))

    @property
    def contrast(self) -> float:
        if self.delta_L is not None:
            return float(self.delta_L)
        if not self.L_samples:
            raise EmptySamples("no luminance samples")
        return max(self.L_samples) - min(self.L_samples)


def luminance_frequency(samples: LuminanceSampleSet) -> Quantity:
    """nu_L = delta_L / (mean L * mean t), reported in s^-1.

    The contrast delta_L / mean L is a pure number, so the result is a
    frequency in both engine modes.
    """
    if not samples.L_samples or not samples.t_samples:
        raise EmptySamples("luminance and time samples must both be nonempty")
    mean_L = math.fsum(samples.L_samples) / len(samples.L_samples)
    mean_t = math.fsum(samples.t_samples) / len(samples.t_samples)
    if mean_L == 0:
        raise ZeroMean("mean luminance is zero")
    if mean_t == 0:
        raise ZeroMean("mean time is zero")
    return Quantity(samples.contrast / (mean_L * mean_t), FREQUENCY)


LUMINANCE_HEADER = ("L_cd_per_m2", "t_s")


def load_luminance_samples(text: str, delta_L: Optional[float] = None) -> LuminanceSampleSet:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(c.strip() for c in rows[0]) != LUMINANCE_HEADER:
        raise FormatError(f"header must be {','.join(LUMINANCE_HEADER)}", 1, 1)
    L, t = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise FormatError(f"expected 2 fields, got {len(row)}", lineno, 1)
        for col, (cell, sink) in enumerate(zip(row, (L, t)), start=1):
            try:
                sink.append(float(cell))
            except ValueError:
                raise FormatError(f"not a number: {cell!r}", lineno, col) from None
    return LuminanceSampleSet(tuple(L), tuple(t), delta_L)


@dataclass(frozen=True)
class FluxResult:
    value: Quantity  # kg s^-3
    form: str  # which equivalent expression produced the number


FLUX_FORMS = ("charge", "luminance", "voltage", "photon")


def biovi_flux(
    A,
    *,
    nu_L=None,
    Q=None,
    L_star=None,
    I=None,
    t=None,
    cons_t=None,
    V=None,
    E_photon=None,
    tau=None,
) -> FluxResult:
    """Flux per unit area in W m^-2 (kg s^-3) from exactly one input set.

    ``nu_L, Q``             -> nu_L Q / A          (form "charge")
    ``L_star, I, t, cons_t``-> L* I / ((t + cons t) A)  (form "luminance")
    ``V, I``                -> V I / A             (form "voltage")
    ``E_photon, tau``       -> E / (tau A)         (form "photon")

    The first two forms reach kg s^-3 only through the chain of
    identifications that equates them with the voltage form, so their inputs
    are read as plain SI magnitudes.
    """
    area = coerce(A, AREA, "A")
    if area <= 0:
        raise ZeroArea("area must be positive")
    if nu_L is not None or Q is not None:
        if nu_L is None or Q is None:
            raise TypeError("charge form needs nu_L and Q")
        value = qty.coerce(nu_L, FREQUENCY, "nu_L") * qty.coerce(Q, qty.CHARGE, "Q") / area
        form = "charge"
    elif L_star is not None:
        if I is None or t is None:
            raise TypeError("luminance form needs L_star, I and t")
        span = coerce(t, TIME, "t") + (0.0 if cons_t is None else coerce(cons_t, TIME, "cons_t"))
        if span == 0:
            raise ZeroTime("t + cons(t) must be non-zero")
        L = L_star.magnitude if isinstance(L_star, Quantity) else float(L_star)
        value = L * coerce(I, CURRENT, "I") / (span * area)
        form = "luminance"
    elif V is not None:
        if I is None:
            raise TypeError("voltage form needs V and I")
        value = coerce(V, VOLTAGE, "V") * coerce(I, CURRENT, "I") / area
        form = "voltage"
    elif E_photon is not None:
        if tau is None:
            raise TypeError("photon form needs E_photon and tau")
        tau = coerce(tau, TIME, "tau")
        if tau == 0:
            raise ZeroTime("tau must be non-zero")
        value = coerce(E_photon, ENERGY, "E_photon") / (tau * area)
        form = "photon"
    else:
        raise TypeError("biovi_flux needs one complete input set")
    return FluxResult(Quantity(value, IRRADIANCE), form)


def biovi_quantity(nu, v_rgb, multiplier: float = 1.0) -> Quantity:
    """beta = h nu v_rgb (kg m^3 s^-3), times an optional dimensionless factor."""
    beta = energy_pixel_product(photon_energy(nu), Quantity(coerce(v_rgb, VELOCITY, "v_rgb"), VELOCITY))
    if multiplier != 1.0:
        beta = beta * Quantity(float(multiplier), DIMENSIONLESS)
    return beta


@dataclass(frozen=True)
class SceneLedger:
    n_C: int
    n_L: Optional[int] = None
    n_R: Optional[int] = None
    t: float = 1.0
    cons_t: float = 0.0


@dataclass(frozen=True)
class SceneAccount:
    total_images: int
    rate: Quantity  # images per second


def scene_accounting(ledger: SceneLedger) -> SceneAccount:
    """Expand n_C centre frames into left and right halves: total = 2 n_C."""
    n_C = int(ledger.n_C)
    if n_C < 0:
        raise OddCenterCount("frame count must be non-negative")
    if n_C % 2:
        raise OddCenterCount(f"n_C = {n_C} cannot be split into equal halves")
    half = n_C // 2
    for side in (ledger.n_L, ledger.n_R):
        if side is not None and side != half:
            raise OddCenterCount(f"side count {side} differs from n_C/2 = {half}")
    total = n_C + half + half
    span = coerce(ledger.t, TIME, "t") + coerce(ledger.cons_t, TIME, "cons_t")
    if span <= 0:
        raise ZeroTimeSpan("t + cons(t) must be positive")
    return SceneAccount(total, Quantity(total / span, FREQUENCY))


@dataclass(frozen=True)
class SceneVolumeChange:
    delta_V: Quantity  # m^3
    ratio: float  # (A_fly dlam_fly) / (A_man dlam_man)


def scene_volume_change(V_S, V_fly, V_man, A_fly, A_man, dlam_fly, dlam_man) -> SceneVolumeChange:
    vs = coerce(V_S, VOLUME, "V_S")
    vf = coerce(V_fly, VOLUME, "V_fly")
    vm = coerce(V_man, VOLUME, "V_man")
    num = coerce(A_fly, AREA, "A_fly") * coerce(dlam_fly, LENGTH, "dlam_fly")
    den = coerce(A_man, AREA, "A_man") * coerce(dlam_man, LENGTH, "dlam_man")
    if den == 0:
        raise ZeroDenominator("A_man * dlam_man is zero")
    free = vs - (vf + vm)
    if free <= 0:
        raise SceneTooSmall("scene volume does not exceed the two bodies")
    ratio = num / den
    return SceneVolumeChange(Quantity(free * ratio, VOLUME), ratio)
