"""Dimensional quantities for the energy model.

All values are stored in canonical SI magnitudes (joule, watt, bit,
second, gram) and carry a dimension signature so that mismatched
arithmetic fails loudly instead of producing garbage. Display units
(Wh, kWh, Mbps, MByte, ...) are lossless decimal scalings.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

__all__ = [
    "Dimension",
    "DimensionError",
    "Quantity",
    "UnitError",
    "DIMENSIONLESS",
    "ENERGY",
    "POWER",
    "ENERGY_PER_BIT",
    "ENERGY_PER_BIT_YEAR",
    "DATA_SIZE",
    "DATA_RATE",
    "TIME",
    "CARBON_INTENSITY",
    "MASS",
    "parse_quantity",
    "quantity",
]

#: Seconds in the model year (365 days, matching the yearly accounting).
SECONDS_PER_YEAR = 365 * 86400


class UnitError(ValueError):
    """Unknown unit token or malformed quantity string."""


class DimensionError(ValueError):
    """Arithmetic attempted between incompatible dimensions."""


@dataclass(frozen=True)
class Dimension:
    """Exponent signature over the base dimensions (energy, data, time, mass)."""

    energy: int = 0
    data: int = 0
    time: int = 0
    mass: int = 0

    def __mul__(self, other: "Dimension") -> "Dimension":
        return Dimension(
            self.energy + other.energy,
            self.data + other.data,
            self.time + other.time,
            self.mass + other.mass,
        )

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return Dimension(
            self.energy - other.energy,
            self.data - other.data,
            self.time - other.time,
            self.mass - other.mass,
        )

    def __str__(self) -> str:
        parts = []
        for sym, exp in (
            ("J", self.energy),
            ("bit", self.data),
            ("s", self.time),
            ("g", self.mass),
        ):
            if exp == 1:
                parts.append(sym)
            elif exp != 0:
                parts.append(f"{sym}^{exp}")
        return "*".join(parts) if parts else "1"


DIMENSIONLESS = Dimension()
ENERGY = Dimension(energy=1)
POWER = Dimension(energy=1, time=-1)
ENERGY_PER_BIT = Dimension(energy=1, data=-1)
ENERGY_PER_BIT_YEAR = Dimension(energy=1, data=-1, time=-1)
DATA_SIZE = Dimension(data=1)
DATA_RATE = Dimension(data=1, time=-1)
TIME = Dimension(time=1)
MASS = Dimension(mass=1)
CARBON_INTENSITY = Dimension(energy=-1, mass=1)

# Note: power-per-rate (W per bit/s) composes to the same signature as
# energy-per-bit, which is dimensionally exact; the two unify here.

_PREFIXES = {
    "": 1.0,
    "m": 1e-3,
    "k": 1e3,
    "M": 1e6,
    "G": 1e9,
    "T": 1e12,
}

# Base unit tokens: symbol -> (dimension, scale to SI).
_BASE_UNITS: dict[str, tuple[Dimension, float]] = {
    "J": (ENERGY, 1.0),
    "Wh": (ENERGY, 3600.0),
    "W": (POWER, 1.0),
    "bit": (DATA_SIZE, 1.0),
    "b": (DATA_SIZE, 1.0),
    "B": (DATA_SIZE, 8.0),
    "Byte": (DATA_SIZE, 8.0),
    "byte": (DATA_SIZE, 8.0),
    "bps": (DATA_RATE, 1.0),
    "bit/s": (DATA_RATE, 1.0),
    "s": (TIME, 1.0),
    "min": (TIME, 60.0),
    "h": (TIME, 3600.0),
    "day": (TIME, 86400.0),
    "year": (TIME, float(SECONDS_PER_YEAR)),
    "yr": (TIME, float(SECONDS_PER_YEAR)),
    "g": (MASS, 1.0),
    "t": (MASS, 1e6),
}

# Units that never take an SI prefix (avoids "min" parsing as milli-"in").
_NO_PREFIX = {"min", "h", "day", "year", "yr", "s", "t"}

_TOKEN_RE = re.compile(r"^([mkMGT]?)([A-Za-z/]+)$")


def _resolve_token(token: str) -> tuple[Dimension, float]:
    token = token.strip()
    if token in _BASE_UNITS:
        return _BASE_UNITS[token]
    m = _TOKEN_RE.match(token)
    if m:
        prefix, rest = m.groups()
        if prefix and rest in _BASE_UNITS and rest not in _NO_PREFIX:
            dim, scale = _BASE_UNITS[rest]
            return dim, scale * _PREFIXES[prefix]
    raise UnitError(f"unknown unit token {token!r}")


def parse_unit(spec: str) -> tuple[Dimension, float]:
    """Resolve a unit expression like ``mWh/MByte`` or ``W/Mbps``.

    The expression is a numerator token followed by zero or more
    ``/denominator`` tokens. Returns (dimension, scale-to-SI).
    """
    spec = spec.strip()
    if not spec:
        raise UnitError("empty unit")
    # normalize "MByte-yr" style suffixes into a division
    spec = spec.replace("-", "/")
    parts = [p for p in spec.split("/") if p]
    if not parts:
        raise UnitError(f"malformed unit {spec!r}")
    # special-case: "bit/s" and "Xbps" already handled as single tokens
    dim, scale = _resolve_token(parts[0])
    for denom in parts[1:]:
        ddim, dscale = _resolve_token(denom)
        dim = dim / ddim
        scale = scale / dscale
    return dim, scale


class Quantity:
    """An immutable physical value: SI magnitude plus dimension signature.

    Physical quantities in this model are non-negative; negative or
    non-finite magnitudes are rejected at construction.
    """

    __slots__ = ("si", "dimension")

    def __init__(self, si: float, dimension: Dimension = DIMENSIONLESS):
        si = float(si)
        if not math.isfinite(si):
            raise ValueError(f"non-finite magnitude {si!r}")
        if si < 0:
            raise ValueError(f"negative magnitude {si!r}")
        object.__setattr__(self, "si", si)
        object.__setattr__(self, "dimension", dimension)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Quantity is immutable")

    # -- arithmetic ---------------------------------------------------

    def _require_same(self, other: "Quantity") -> None:
        if self.dimension != other.dimension:
            raise DimensionError(
                f"cannot combine [{self.dimension}] with [{other.dimension}]"
            )

    def __add__(self, other: "Quantity") -> "Quantity":
        if not isinstance(other, Quantity):
            return NotImplemented
        self._require_same(other)
        return Quantity(self.si + other.si, self.dimension)

    def __sub__(self, other: "Quantity") -> "Quantity":
        if not isinstance(other, Quantity):
            return NotImplemented
        self._require_same(other)
        return Quantity(self.si - other.si, self.dimension)

    def __mul__(self, other):
        if isinstance(other, Quantity):
            return Quantity(self.si * other.si, self.dimension * other.dimension)
        if isinstance(other, (int, float)):
            return Quantity(self.si * other, self.dimension)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Quantity):
            return Quantity(self.si / other.si, self.dimension / other.dimension)
        if isinstance(other, (int, float)):
            return Quantity(self.si / other, self.dimension)
        return NotImplemented

    # -- comparison ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Quantity)
            and self.si == other.si
            and self.dimension == other.dimension
        )

    def __hash__(self) -> int:
        return hash((self.si, self.dimension))

    def __lt__(self, other: "Quantity") -> bool:
        self._require_same(other)
        return self.si < other.si

    def __le__(self, other: "Quantity") -> bool:
        self._require_same(other)
        return self.si <= other.si

    def __gt__(self, other: "Quantity") -> bool:
        self._require_same(other)
        return self.si > other.si

    def __ge__(self, other: "Quantity") -> bool:
        self._require_same(other)
        return self.si >= other.si

    # -- conversion ---------------------------------------------------

    def to(self, unit: str) -> float:
        """Magnitude expressed in ``unit`` (must match this dimension)."""
        dim, scale = parse_unit(unit)
        if dim != self.dimension:
            raise DimensionError(
                f"cannot express [{self.dimension}] in {unit!r} [{dim}]"
            )
        return self.si / scale

    def format(self, unit: str, digits: int = 15) -> str:
        return f"{self.to(unit):.{digits}g} {unit}"

    def __repr__(self) -> str:
        return f"Quantity({self.si!r}, [{self.dimension}])"

    # convenience accessors used throughout the model
    @property
    def kwh(self) -> float:
        return self.to("kWh")


def quantity(value: float, unit: str) -> Quantity:
    """Build a Quantity from a magnitude and unit expression."""
    dim, scale = parse_unit(unit)
    return Quantity(float(value) * scale, dim)


_QUANTITY_RE = re.compile(
    r"^\s*([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*(.*?)\s*$"
)


def parse_quantity(text: str, expect: Dimension | None = None) -> Quantity:
    """Parse a string like ``"100 W"`` or ``"0.624 mWh/MByte"``.

    Raises UnitError for malformed input and DimensionError when
    ``expect`` is given and the parsed dimension differs.
    """
    if not isinstance(text, str):
        raise UnitError(f"expected a quantity string, got {type(text).__name__}")
    m = _QUANTITY_RE.match(text)
    if not m or not m.group(2):
        raise UnitError(f"malformed quantity {text!r} (need '<number> <unit>')")
    value, unit = m.groups()
    q = quantity(float(value), unit)
    if expect is not None and q.dimension != expect:
        raise DimensionError(
            f"{text!r} has dimension [{q.dimension}], expected [{expect}]"
        )
    return q


# Preferred display unit per dimension, used when echoing parameters.
_DISPLAY_UNITS = {
    ENERGY: "kWh",
    POWER: "W",
    ENERGY_PER_BIT: "mWh/MByte",
    ENERGY_PER_BIT_YEAR: "Wh/MByte/year",
    DATA_SIZE: "MByte",
    DATA_RATE: "Mbps",
    TIME: "s",
    MASS: "g",
    CARBON_INTENSITY: "g/kWh",
}


def display(q: Quantity) -> str:
    """Human-readable rendering in the conventional unit for its dimension."""
    unit = _DISPLAY_UNITS.get(q.dimension)
    if unit is None:
        return f"{q.si:.15g} [{q.dimension}]"
    return q.format(unit)
