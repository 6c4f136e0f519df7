"""Dimensioned magnitudes, unit-expression parsing and the engine's constants.

A :class:`Dimension` is a vector of eight integer exponents over the SI base
units plus the steradian.  A :class:`Quantity` pairs a finite float magnitude
(always stored in coherent SI units) with a Dimension.

Unit expressions are whitespace-separated products of symbols with optional
integer exponents, e.g. ``"kg m^3 s^-3"``.  Prefixes ``m c k M G`` are allowed
on ``m``, ``g``, ``s`` and ``Hz``.

The engine runs in one of two modes.  In ``checked`` mode a dimension mismatch
raises :class:`~biovi.errors.DimensionMismatch`; in ``paper-faithful`` mode the
mismatch is downgraded to a :class:`~biovi.errors.DimensionWarning` and the
left operand's dimension is kept.  The default comes from ``BIOVI_MODE``.
"""
from __future__ import annotations

import contextlib
import contextvars
import math
import os
import re
import warnings
from dataclasses import dataclass
from numbers import Real
from typing import Iterator, Mapping, Union

from .errors import (
    DimensionMismatch,
    DimensionWarning,
    DivisionByZero,
    DomainError,
    ExponentOverflow,
    ParseError,
    UnknownConstant,
    UnknownUnit,
)

BASE_UNITS = ("m", "kg", "s", "A", "K", "mol", "cd", "sr")
# canonical print order; mass first so that "kg m^3 s^-3" comes out as written
FORMAT_ORDER = ("kg", "m", "s", "A", "K", "mol", "cd", "sr")
EXPONENT_LIMIT = 12

CHECKED = "checked"
PAPER_FAITHFUL = "paper-faithful"
_MODE_ALIASES = {
    "checked": CHECKED,
    "paper-faithful": PAPER_FAITHFUL,
    "paper_faithful": PAPER_FAITHFUL,
    "faithful": PAPER_FAITHFUL,
}


def _normalize_mode(name: str) -> str:
    try:
        return _MODE_ALIASES[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown evaluation mode {name!r}") from None


_mode_var: contextvars.ContextVar[str] = contextvars.ContextVar(
    "biovi_mode", default=_normalize_mode(os.environ.get("BIOVI_MODE", CHECKED))
)


def get_mode() -> str:
    return _mode_var.get()


def set_mode(name: str) -> None:
    _mode_var.set(_normalize_mode(name))


@contextlib.contextmanager
def evaluation_mode(name: str) -> Iterator[str]:
    """Temporarily switch between ``checked`` and ``paper-faithful``."""
    token = _mode_var.set(_normalize_mode(name))
    try:
        yield _mode_var.get()
    finally:
        _mode_var.reset(token)


def report_mismatch(left, right, context: str = "") -> None:
    """Raise or warn about a dimension mismatch depending on the active mode."""
    if get_mode() == CHECKED:
        raise DimensionMismatch(left, right, context)
    warnings.warn(str(DimensionMismatch(left, right, context)), DimensionWarning, stacklevel=3)


# --------------------------------------------------------------------------- #
# Dimension
# --------------------------------------------------------------------------- #
@dataclass(frozen=True)
class Dimension:
    exponents: tuple = (0,) * len(BASE_UNITS)

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if len(exps) != len(BASE_UNITS):
            raise ValueError(f"expected {len(BASE_UNITS)} exponents, got {len(exps)}")
        for name, e in zip(BASE_UNITS, exps):
            if abs(e) > EXPONENT_LIMIT:
                raise ExponentOverflow(f"exponent of {name} is {e}, outside ±{EXPONENT_LIMIT}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def of(cls, **powers: int) -> "Dimension":
        unknown = set(powers) - set(BASE_UNITS)
        if unknown:
            raise KeyError(f"unknown base unit(s): {sorted(unknown)}")
        return cls(tuple(powers.get(name, 0) for name in BASE_UNITS))

    def as_dict(self) -> dict:
        return {name: e for name, e in zip(BASE_UNITS, self.exponents) if e}

    @property
    def is_dimensionless(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: "Dimension") -> "Dimension":
        return Dimension(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return Dimension(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> "Dimension":
        if int(k) != k:
            raise TypeError("dimensions only take integer powers")
        return Dimension(tuple(a * int(k) for a in self.exponents))

    def inverse(self) -> "Dimension":
        return self ** -1

    def erase_steradian(self) -> "Dimension":
        """Drop the solid-angle exponent (sr is dimensionless in SI proper)."""
        exps = list(self.exponents)
        exps[BASE_UNITS.index("sr")] = 0
        return Dimension(tuple(exps))

    def __str__(self) -> str:
        return format_dimension(self)


DIMENSIONLESS = Dimension()


def _d(**kw) -> Dimension:
    return Dimension.of(**kw)


LENGTH = _d(m=1)
MASS = _d(kg=1)
TIME = _d(s=1)
AREA = _d(m=2)
VOLUME = _d(m=3)
VELOCITY = _d(m=1, s=-1)
FREQUENCY = _d(s=-1)
ENERGY = _d(kg=1, m=2, s=-2)
POWER = _d(kg=1, m=2, s=-3)
CHARGE = _d(A=1, s=1)
CURRENT = _d(A=1)
VOLTAGE = _d(kg=1, m=2, s=-3, A=-1)
FORCE = _d(kg=1, m=1, s=-2)
ELECTRIC_FIELD = _d(kg=1, m=1, s=-3, A=-1)
MAGNETIC_FIELD = _d(kg=1, s=-2, A=-1)
LUMINOUS_FLUX = _d(cd=1, sr=1)
LUMINANCE = _d(cd=1, m=-2)
SOLID_ANGLE = _d(sr=1)
DENSITY = _d(kg=1, m=-3)
IRRADIANCE = _d(kg=1, s=-3)
ACTION = _d(kg=1, m=2, s=-1)


# --------------------------------------------------------------------------- #
# Unit table and parser
# --------------------------------------------------------------------------- #
_UNITS: dict[str, tuple[float, Dimension]] = {
    "m": (1.0, LENGTH),
    "g": (1e-3, MASS),
    "kg": (1.0, MASS),
    "s": (1.0, TIME),
    "A": (1.0, CURRENT),
    "K": (1.0, _d(K=1)),
    "mol": (1.0, _d(mol=1)),
    "cd": (1.0, _d(cd=1)),
    "sr": (1.0, SOLID_ANGLE),
    "N": (1.0, FORCE),
    "J": (1.0, ENERGY),
    "W": (1.0, POWER),
    "V": (1.0, VOLTAGE),
    "C": (1.0, CHARGE),
    "T": (1.0, MAGNETIC_FIELD),
    "Hz": (1.0, FREQUENCY),
    "lm": (1.0, LUMINOUS_FLUX),
}
_PREFIXES = {"m": 1e-3, "c": 1e-2, "k": 1e3, "M": 1e6, "G": 1e9}
_PREFIXABLE = ("m", "g", "s", "Hz")

for _base in _PREFIXABLE:
    _scale, _dim = _UNITS[_base]
    for _p, _f in _PREFIXES.items():
        _UNITS.setdefault(_p + _base, (_f * _scale, _dim))
del _base, _scale, _dim, _p, _f

_TERM_RE = re.compile(r"([A-Za-z]+)(?:\^([+-]?\d+))?")


def parse_unit(text: str) -> tuple[float, Dimension]:
    """Parse a unit expression into ``(scale_to_SI, Dimension)``.

    ``"1"`` is accepted as the dimensionless unit.
    """
    if text.strip() == "1":
        return 1.0, DIMENSIONLESS
    raw = text.encode("utf-8")
    pos = 0
    n = len(text)
    scale = 1.0
    dim = DIMENSIONLESS
    seen_term = False
    while True:
        while pos < n and text[pos] in " \t":
            pos += 1
        if pos >= n:
            break
        if seen_term and text[pos - 1] not in " \t":
            raise ParseError("expected whitespace between terms", len(text[:pos].encode("utf-8")))
        m = _TERM_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", len(text[:pos].encode("utf-8")))
        symbol = m.group(1)
        if symbol not in _UNITS:
            raise UnknownUnit(f"unknown unit {symbol!r}", len(text[:pos].encode("utf-8")))
        power = int(m.group(2)) if m.group(2) is not None else 1
        unit_scale, unit_dim = _UNITS[symbol]
        scale *= unit_scale ** power
        dim = dim * unit_dim ** power
        pos = m.end()
        seen_term = True
    if not seen_term:
        raise ParseError("empty unit expression", len(raw))
    return scale, dim


def q_parse(text: str) -> Dimension:
    """Parse a unit expression and return only its Dimension."""
    return parse_unit(text)[1]


def format_dimension(dim: Dimension) -> str:
    """Canonical base-unit spelling, e.g. ``"kg m^3 s^-3"``; ``"1"`` if none."""
    powers = dim.as_dict()
    terms = []
    for name in FORMAT_ORDER:
        e = powers.get(name, 0)
        if e == 1:
            terms.append(name)
        elif e:
            terms.append(f"{name}^{e}")
    return " ".join(terms) if terms else "1"


q_format = format_dimension


# --------------------------------------------------------------------------- #
# Quantity
# --------------------------------------------------------------------------- #
Number = Union[int, float]


@dataclass(frozen=True)
class Quantity:
    magnitude: float
    dim: Dimension = DIMENSIONLESS

    def __post_init__(self):
        mag = float(self.magnitude)
        if math.isnan(mag) or math.isinf(mag):
            raise DomainError(f"quantity magnitude must be finite, got {mag!r}")
        object.__setattr__(self, "magnitude", mag)

    @classmethod
    def parse(cls, text: str) -> "Quantity":
        """``"0.023 cm"`` -> Quantity(2.3e-4, m)."""
        text = text.strip()
        head, _, unit = text.partition(" ")
        try:
            value = float(head)
        except ValueError:
            raise ParseError(f"invalid magnitude {head!r}", 0) from None
        if not unit.strip():
            return cls(value)
        scale, dim = parse_unit(unit.strip())
        return cls(value * scale, dim)

    @classmethod
    def of(cls, value: Number, unit: str) -> "Quantity":
        scale, dim = parse_unit(unit)
        return cls(value * scale, dim)

    # conversions ----------------------------------------------------------
    def to(self, unit: str) -> float:
        """Magnitude expressed in ``unit`` (dimension must agree)."""
        scale, dim = parse_unit(unit)
        if dim != self.dim:
            report_mismatch(self.dim, dim, f"conversion to {unit!r}")
        return self.magnitude / scale

    def erase_steradian(self) -> "Quantity":
        return Quantity(self.magnitude, self.dim.erase_steradian())

    def sqrt(self) -> "Quantity":
        if any(e % 2 for e in self.dim.exponents):
            raise ExponentOverflow(f"cannot take the square root of [{self.dim}]: odd exponent")
        if self.magnitude < 0:
            raise DomainError("square root of a negative magnitude")
        return Quantity(math.sqrt(self.magnitude), Dimension(tuple(e // 2 for e in self.dim.exponents)))

    def __float__(self) -> float:
        if not self.dim.is_dimensionless:
            raise TypeError(f"cannot convert a quantity in [{self.dim}] to float")
        return self.magnitude

    # arithmetic -----------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, Quantity):
            return Quantity(self.magnitude * other.magnitude, self.dim * other.dim)
        if isinstance(other, Real):
            return Quantity(self.magnitude * other, self.dim)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Quantity):
            if other.magnitude == 0:
                raise DivisionByZero("division by a zero quantity")
            return Quantity(self.magnitude / other.magnitude, self.dim / other.dim)
        if isinstance(other, Real):
            if other == 0:
                raise DivisionByZero("division by zero")
            return Quantity(self.magnitude / other, self.dim)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Real):
            if self.magnitude == 0:
                raise DivisionByZero("division by a zero quantity")
            return Quantity(other / self.magnitude, self.dim.inverse())
        return NotImplemented

    def __pow__(self, k: int):
        if int(k) != k:
            raise TypeError("quantities only take integer powers")
        k = int(k)
        if k < 0 and self.magnitude == 0:
            raise DivisionByZero("negative power of zero")
        return Quantity(self.magnitude ** k, self.dim ** k)

    def __add__(self, other):
        if not isinstance(other, Quantity):
            if isinstance(other, Real):
                other = Quantity(other)
            else:
                return NotImplemented
        return q_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Real):
            other = Quantity(other)
        if not isinstance(other, Quantity):
            return NotImplemented
        return q_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Quantity(-self.magnitude, self.dim)

    def __abs__(self):
        return Quantity(abs(self.magnitude), self.dim)

    def __str__(self) -> str:
        unit = format_dimension(self.dim)
        return repr(self.magnitude) if unit == "1" else f"{self.magnitude!r} {unit}"


def q(value: Number, unit: str = "1") -> Quantity:
    """Shorthand constructor: ``q(0.023, "cm")``."""
    return Quantity.of(value, unit)


def dimensionless(value: Number = 1.0) -> Quantity:
    return Quantity(value, DIMENSIONLESS)


def q_add(a: Quantity, b: Quantity) -> Quantity:
    if a.dim != b.dim:
        report_mismatch(a.dim, b.dim, "addition")
    return Quantity(a.magnitude + b.magnitude, a.dim)


def q_combine(a: Quantity, b: Quantity | None, op: str, k: int | None = None) -> Quantity:
    """Multiply, divide or raise to an integer power.

    ``op`` is ``"multiply"``, ``"divide"`` or ``"power"``; for ``"power"`` the
    exponent is ``k`` and ``b`` is ignored.
    """
    if op == "multiply":
        return a * b
    if op == "divide":
        return a / b
    if op == "power":
        if k is None:
            raise TypeError("power needs an integer exponent k")
        return a ** k
    raise ValueError(f"unknown combine op {op!r}")


def coerce(value, dim: Dimension, name: str = "value") -> float:
    """Return an SI magnitude, checking the dimension when a Quantity is given.

    Plain numbers are taken to already be in coherent SI units.
    """
    if isinstance(value, Quantity):
        if value.dim != dim:
            report_mismatch(value.dim, dim, name)
        return value.magnitude
    if isinstance(value, str):
        try:
            return float(value)  # a bare number is SI, like any other number
        except ValueError:
            return coerce(Quantity.parse(value), dim, name)
    return float(value)


# --------------------------------------------------------------------------- #
# Constants
# --------------------------------------------------------------------------- #
SPEED_OF_LIGHT = 299_792_458.0
PLANCK = 6.626068e-34
DIRAC = PLANCK / (2.0 * math.pi)
PLANCK_TIME = 5.3912140e-44
PLANCK_LENGTH = 1.61624e-35
GRAVITATIONAL = 6.67430e-11

_CONSTANTS: Mapping[str, Quantity] = {
    "c": Quantity(SPEED_OF_LIGHT, VELOCITY),
    "h": Quantity(PLANCK, ACTION),
    "hbar": Quantity(DIRAC, ACTION),
    "t_P": Quantity(PLANCK_TIME, TIME),
    "l_P": Quantity(PLANCK_LENGTH, LENGTH),
    "G": Quantity(GRAVITATIONAL, _d(m=3, kg=-1, s=-2)),
}

CONSTANT_NAMES = tuple(_CONSTANTS)


def constant(name: str) -> Quantity:
    try:
        return _CONSTANTS[name]
    except KeyError:
        raise UnknownConstant(f"unknown constant {name!r}; known: {', '.join(CONSTANT_NAMES)}") from None
