"""Core energy accounting for an online video service.

Every function here is a pure closed-form sum over three component
groups: end-user terminals (UT), the provider's servers (VP), and the
transmission network (NW). Energy is converted to greenhouse-gas mass
through a grid carbon intensity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .units import (
    DATA_RATE,
    DATA_SIZE,
    ENERGY,
    ENERGY_PER_BIT,
    ENERGY_PER_BIT_YEAR,
    MASS,
    POWER,
    TIME,
    DimensionError,
    Quantity,
    quantity,
)

__all__ = [
    "Direction",
    "DevicePowerProfile",
    "StreamRequest",
    "ServerProfile",
    "EncodeVariant",
    "TranscodeJob",
    "NetworkProfile",
    "CarbonIntensity",
    "ServerTaskEnergies",
    "ut_request_energy",
    "ut_fleet_energy",
    "vp_transfer_energy",
    "vp_transcode_energy",
    "vp_storage_energy",
    "vp_server_energy",
    "vp_provider_energy",
    "nw_request_energy",
    "nw_energy",
    "service_energy",
    "global_energy",
    "ghg_emissions",
]

ZERO_ENERGY = Quantity(0.0, ENERGY)


def _check(q: Quantity, dim, what: str) -> Quantity:
    if not isinstance(q, Quantity):
        raise TypeError(f"{what} must be a Quantity")
    if q.dimension != dim:
        raise DimensionError(f"{what} has dimension [{q.dimension}], expected [{dim}]")
    return q


class Direction(enum.Enum):
    """Which transfer directions are active during a streaming request."""

    RX = "rx"
    TX = "tx"
    BIDIRECTIONAL = "bidirectional"


@dataclass(frozen=True)
class DevicePowerProfile:
    """Power draw of one end-user device class.

    ``p_rx``/``p_tx`` may be zero when only the constant draw is known
    (e.g. TV sets).
    """

    name: str
    p_offset: Quantity
    p_rx: Quantity
    p_tx: Quantity

    def __post_init__(self):
        _check(self.p_offset, POWER, "p_offset")
        _check(self.p_rx, POWER, "p_rx")
        _check(self.p_tx, POWER, "p_tx")


@dataclass(frozen=True)
class StreamRequest:
    """One streaming event: duration, bitrate and active direction(s).

    ``video_size`` defaults to bitrate x duration; pass it explicitly to
    override (e.g. for padded container formats).
    """

    duration: Quantity
    bitrate: Quantity
    direction: Direction = Direction.RX
    video_size: Quantity | None = None

    def __post_init__(self):
        _check(self.duration, TIME, "duration")
        _check(self.bitrate, DATA_RATE, "bitrate")
        if self.duration.si <= 0:
            raise ValueError("request duration must be > 0")
        if self.bitrate.si <= 0:
            raise ValueError("request bitrate must be > 0")
        if self.video_size is None:
            object.__setattr__(self, "video_size", self.bitrate * self.duration)
        else:
            _check(self.video_size, DATA_SIZE, "video_size")


@dataclass(frozen=True)
class ServerProfile:
    """Per-server energy parameters of a provider data center or CDN node."""

    name: str
    pue: float
    e_offset_year: Quantity
    e_send_per_bit: Quantity
    e_rx_per_bit: Quantity
    e_store_per_bit_year: Quantity
    p_dec: Quantity
    p_enc: Quantity

    def __post_init__(self):
        if not math.isfinite(self.pue) or self.pue < 1.0:
            raise ValueError(f"PUE must be >= 1, got {self.pue}")
        _check(self.e_offset_year, ENERGY, "e_offset_year")
        _check(self.e_send_per_bit, ENERGY_PER_BIT, "e_send_per_bit")
        _check(self.e_rx_per_bit, ENERGY_PER_BIT, "e_rx_per_bit")
        _check(self.e_store_per_bit_year, ENERGY_PER_BIT_YEAR, "e_store_per_bit_year")
        _check(self.p_dec, POWER, "p_dec")
        _check(self.p_enc, POWER, "p_enc")


@dataclass(frozen=True)
class EncodeVariant:
    """One encoded output stream: encoder effort and resulting size."""

    label: str
    p_enc: Quantity
    output_size: Quantity

    def __post_init__(self):
        _check(self.p_enc, POWER, "p_enc")
        _check(self.output_size, DATA_SIZE, "output_size")
        if self.output_size.si <= 0:
            raise ValueError("variant output_size must be > 0")


@dataclass(frozen=True)
class TranscodeJob:
    """Decode an ingested video once, encode each output variant once."""

    source_duration: Quantity
    output_variants: tuple[EncodeVariant, ...] = ()

    def __post_init__(self):
        _check(self.source_duration, TIME, "source_duration")
        object.__setattr__(self, "output_variants", tuple(self.output_variants))


@dataclass(frozen=True)
class NetworkProfile:
    """Aggregate network path power: constant offset plus a per-rate term."""

    name: str
    p_offset: Quantity
    p_per_rate: Quantity

    def __post_init__(self):
        _check(self.p_offset, POWER, "p_offset")
        _check(self.p_per_rate, ENERGY_PER_BIT, "p_per_rate")


@dataclass(frozen=True)
class CarbonIntensity:
    """Grid emission factor in grams CO2-equivalent per kWh."""

    grams_per_kwh: float

    def __post_init__(self):
        if not math.isfinite(self.grams_per_kwh) or self.grams_per_kwh < 0:
            raise ValueError("carbon intensity must be finite and >= 0")

    def as_quantity(self) -> Quantity:
        return quantity(self.grams_per_kwh, "g/kWh")


@dataclass(frozen=True)
class ServerTaskEnergies:
    """The six per-server task energies, before PUE scaling."""

    offset: Quantity = ZERO_ENERGY
    rx: Quantity = ZERO_ENERGY
    transcode: Quantity = ZERO_ENERGY
    copies: Quantity = ZERO_ENERGY
    store: Quantity = ZERO_ENERGY
    tx: Quantity = ZERO_ENERGY

    def __post_init__(self):
        for name in ("offset", "rx", "transcode", "copies", "store", "tx"):
            _check(getattr(self, name), ENERGY, name)


# ---------------------------------------------------------------------------
# End-user terminals
# ---------------------------------------------------------------------------


def ut_request_energy(profile: DevicePowerProfile, request: StreamRequest) -> Quantity:
    """Energy of one streaming event on one device.

    Total power is offset plus the active receive/transmit terms; the
    offset is counted once even for bidirectional requests.
    """
    p = profile.p_offset
    if request.direction in (Direction.RX, Direction.BIDIRECTIONAL):
        p = p + profile.p_rx
    if request.direction in (Direction.TX, Direction.BIDIRECTIONAL):
        p = p + profile.p_tx
    return p * request.duration


def ut_fleet_energy(
    fleet: list[tuple[DevicePowerProfile, list[StreamRequest], float]],
) -> Quantity:
    """Sum over fleet entries of multiplicity x per-device request energy.

    Each entry is (profile, workload, multiplicity): N identical devices
    with identical workloads.
    """
    total = ZERO_ENERGY
    for profile, workload, multiplicity in fleet:
        if multiplicity < 0:
            raise ValueError("fleet multiplicity must be >= 0")
        per_device = ZERO_ENERGY
        for request in workload:
            per_device = per_device + ut_request_energy(profile, request)
        total = total + multiplicity * per_device
    return total


# ---------------------------------------------------------------------------
# Video providers
# ---------------------------------------------------------------------------


def vp_transfer_energy(bits: Quantity, per_bit: Quantity) -> Quantity:
    """Bits moved times per-bit energy (server Tx, surrogate copies, Rx)."""
    _check(bits, DATA_SIZE, "bits")
    _check(per_bit, ENERGY_PER_BIT, "per_bit")
    return bits * per_bit


def vp_transcode_energy(job: TranscodeJob, p_dec: Quantity) -> Quantity:
    """Decode the source once, encode each output variant once."""
    _check(p_dec, POWER, "p_dec")
    total = p_dec * job.source_duration
    for variant in job.output_variants:
        total = total + variant.p_enc * job.source_duration
    return total


def vp_storage_energy(
    stored: list[Quantity],
    per_bit_year: Quantity,
    stored_fraction_of_year: float = 1.0,
) -> Quantity:
    """Yearly storage energy for a set of stored video sizes."""
    _check(per_bit_year, ENERGY_PER_BIT_YEAR, "per_bit_year")
    if not 0.0 <= stored_fraction_of_year <= 1.0:
        raise ValueError("stored_fraction_of_year must be in [0, 1]")
    total_bits = Quantity(0.0, DATA_SIZE)
    for size in stored:
        _check(size, DATA_SIZE, "stored size")
        total_bits = total_bits + size
    year = quantity(1.0, "year")
    return per_bit_year * total_bits * year * stored_fraction_of_year


def vp_server_energy(parts: ServerTaskEnergies) -> Quantity:
    """Raw per-server sum of the six task energies (no PUE here)."""
    return (
        parts.offset + parts.rx + parts.transcode + parts.copies + parts.store + parts.tx
    )


def vp_provider_energy(
    servers: list[tuple[ServerProfile, ServerTaskEnergies]],
) -> Quantity:
    """PUE-scaled sum over all servers; PUE multiplies the whole per-server sum."""
    total = ZERO_ENERGY
    for profile, parts in servers:
        total = total + profile.pue * vp_server_energy(parts)
    return total


# ---------------------------------------------------------------------------
# Transmission networks
# ---------------------------------------------------------------------------


def nw_request_energy(profile: NetworkProfile, request: StreamRequest) -> Quantity:
    """(offset + per-rate x bitrate) x duration for one transfer."""
    p = profile.p_offset + profile.p_per_rate * request.bitrate
    return p * request.duration


def nw_energy(
    ut_paths: list[tuple[NetworkProfile, StreamRequest, float]],
    cdn_paths: list[tuple[NetworkProfile, StreamRequest, float]],
) -> tuple[Quantity, Quantity]:
    """Network energy split into end-user traffic and CDN copy traffic."""

    def accumulate(paths):
        total = ZERO_ENERGY
        for profile, request, multiplicity in paths:
            if multiplicity < 0:
                raise ValueError("path multiplicity must be >= 0")
            total = total + multiplicity * nw_request_energy(profile, request)
        return total

    return accumulate(ut_paths), accumulate(cdn_paths)


# ---------------------------------------------------------------------------
# Service and global totals
# ---------------------------------------------------------------------------


def service_energy(e_ut: Quantity, e_vp: Quantity, e_nw: Quantity) -> Quantity:
    """Three-component service total."""
    for q in (e_ut, e_vp, e_nw):
        _check(q, ENERGY, "service component")
    return e_ut + e_vp + e_nw


def global_energy(services: list[Quantity]) -> Quantity:
    """Sum over all services."""
    total = ZERO_ENERGY
    for e in services:
        _check(e, ENERGY, "service energy")
        total = total + e
    return total


def ghg_emissions(e: Quantity, ci: CarbonIntensity) -> Quantity:
    """Convert energy to grams CO2-equivalent at the given intensity."""
    _check(e, ENERGY, "energy")
    mass = e * ci.as_quantity()
    if mass.dimension != MASS:  # pragma: no cover - dimensional sanity
        raise DimensionError("carbon conversion produced a non-mass quantity")
    return mass
