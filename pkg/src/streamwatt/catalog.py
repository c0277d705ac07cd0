"""Built-in parameter catalog.

All entries are published measurement or modeling values from the
energy-efficiency literature; each carries a provenance note naming the
original study it was taken from. Values with a reported range are kept
as (low, high) endpoints and exposed as separate catalog entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .model import DevicePowerProfile, NetworkProfile, ServerProfile
from .units import quantity

__all__ = ["ParameterCatalog", "builtin_catalog"]


@dataclass(frozen=True)
class ParameterCatalog:
    """Named device, server and network profiles with provenance strings."""

    device_profiles: Mapping[str, DevicePowerProfile]
    server_profiles: Mapping[str, ServerProfile]
    network_profiles: Mapping[str, NetworkProfile]
    provenance: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "device_profiles", MappingProxyType(dict(self.device_profiles)))
        object.__setattr__(self, "server_profiles", MappingProxyType(dict(self.server_profiles)))
        object.__setattr__(self, "network_profiles", MappingProxyType(dict(self.network_profiles)))
        object.__setattr__(self, "provenance", MappingProxyType(dict(self.provenance)))
        for name in self.all_names():
            if not self.provenance.get(name):
                raise ValueError(f"catalog entry {name!r} lacks a provenance note")

    def all_names(self) -> list[str]:
        return (
            list(self.device_profiles)
            + list(self.server_profiles)
            + list(self.network_profiles)
        )

    def device(self, name: str) -> DevicePowerProfile:
        return self.device_profiles[name]

    def server(self, name: str) -> ServerProfile:
        return self.server_profiles[name]

    def network(self, name: str) -> NetworkProfile:
        return self.network_profiles[name]


def _w(value: float) -> "quantity":
    return quantity(value, "W")


def _device(name, p0, prx, ptx) -> DevicePowerProfile:
    return DevicePowerProfile(name, _w(p0), _w(prx), _w(ptx))


# Encoder effort endpoints (per video-second). The low value is a
# power-optimized hardware encoder chip, the high value a complexity-
# maximizing software encoder; a mid value is typical of bulk social-
# media transcoding pipelines.
ENC_LOW_J_PER_S = 0.2
ENC_MID_J_PER_S = 1000.0
ENC_HIGH_J_PER_S = 90_000.0

# Decoder effort endpoints: hardware vs. HEVC software decoding.
DEC_LOW_J_PER_S = 0.719
DEC_HIGH_J_PER_S = 24.45

# Per-server yearly idle-energy range reported for data-center servers.
SERVER_OFFSET_LOW_KWH = 127.0
SERVER_OFFSET_HIGH_KWH = 5570.0


def _server(name, pue, offset_kwh, enc_j_per_s, dec_j_per_s) -> ServerProfile:
    return ServerProfile(
        name=name,
        pue=pue,
        e_offset_year=quantity(offset_kwh, "kWh"),
        e_send_per_bit=quantity(0.624, "mWh/MByte"),
        e_rx_per_bit=quantity(0.624, "mWh/MByte"),
        e_store_per_bit_year=quantity(0.59, "Wh/MByte/year"),
        p_dec=quantity(dec_j_per_s, "J/s"),
        p_enc=quantity(enc_j_per_s, "J/s"),
    )


def builtin_catalog() -> ParameterCatalog:
    """The shipped parameter catalog."""
    devices = {
        # Smartphones. Ranged parameters are split into -low/-high entries.
        "smartphone-galaxy-s3": _device("smartphone-galaxy-s3", 0.805, 0.279, 1.809),
        "smartphone-galaxy-s3-high": _device(
            "smartphone-galaxy-s3-high", 0.805, 1.524, 1.809
        ),
        "smartphone-fairphone2": _device("smartphone-fairphone2", 0.9, 2.21, 0.0),
        "smartphone-htc-g1": _device("smartphone-htc-g1", 0.319, 0.0, 1.05),
        # Offset-only device classes.
        "tablet": _device("tablet", 10.0, 0.0, 0.0),
        "laptop": _device("laptop", 20.0, 0.0, 0.0),
        "tv": _device("tv", 100.0, 0.0, 0.0),
        "tv-large": _device("tv-large", 200.0, 0.0, 0.0),
        "pc": _device("pc", 100.0, 0.0, 0.0),
    }
    servers = {
        "server-default": _server(
            "server-default", 1.08, SERVER_OFFSET_HIGH_KWH,
            ENC_HIGH_J_PER_S, DEC_HIGH_J_PER_S,
        ),
        "server-low-offset": _server(
            "server-low-offset", 1.08, SERVER_OFFSET_LOW_KWH,
            ENC_HIGH_J_PER_S, DEC_HIGH_J_PER_S,
        ),
        "server-realtime": _server(
            "server-realtime", 1.08, SERVER_OFFSET_HIGH_KWH,
            ENC_LOW_J_PER_S, DEC_LOW_J_PER_S,
        ),
        "server-social": _server(
            "server-social", 1.08, SERVER_OFFSET_HIGH_KWH,
            ENC_MID_J_PER_S, DEC_HIGH_J_PER_S,
        ),
        # Unit-PUE server used for per-video what-if studies where the
        # infrastructure overhead is held out of the comparison.
        "server-unit-pue": _server(
            "server-unit-pue", 1.0, SERVER_OFFSET_HIGH_KWH,
            ENC_HIGH_J_PER_S, DEC_HIGH_J_PER_S,
        ),
    }
    networks = {
        "fixed-bb": NetworkProfile(
            "fixed-bb", _w(1.5), quantity(0.03, "W/Mbps")
        ),
        "mobile-4g": NetworkProfile(
            "mobile-4g", _w(0.2), quantity(0.03, "W/Mbps")
        ),
        "optical-link": NetworkProfile(
            "optical-link", _w(0.0), quantity(0.1, "W/Mbps")
        ),
        "atlantic-cable": NetworkProfile(
            "atlantic-cable", _w(0.0), quantity(0.05, "W/Mbps")
        ),
    }
    provenance = {
        "smartphone-galaxy-s3": (
            "Carroll & Heiser 2013 smartphone power analysis; offset is the "
            "airplane-mode idle power, Rx is the low end of the measured "
            "video playback range, Tx is reported as a minimum"
        ),
        "smartphone-galaxy-s3-high": (
            "Carroll & Heiser 2013 smartphone power analysis; Rx at the high "
            "end of the measured video playback range, Tx reported minimum"
        ),
        "smartphone-fairphone2": (
            "Herglotz et al. 2020 smartphone streaming measurements over "
            "Wi-Fi; Rx is an 'up to' bound, no Tx value reported"
        ),
        "smartphone-htc-g1": (
            "Hao et al. 2011 smartphone energy profiling; Tx reported as a "
            "minimum, no Rx value reported"
        ),
        "tablet": "Malmodin & Lundén 2020 device survey (offset only)",
        "laptop": "Malmodin & Lundén 2020 device survey (offset only)",
        "tv": "Malmodin & Lundén 2020 device survey (offset only)",
        "tv-large": (
            "upper end of the 50-200 W TV range reported in display power "
            "surveys (Sadasivan 2016); used for large 4K screens"
        ),
        "pc": "Malmodin & Lundén 2020 device survey (offset only)",
        "server-default": (
            "PUE 1.08 for hyperscale data centers (Uzaman 2019); offset at "
            "the upper end of the reported 127 kWh-5.57 MWh per-server-year "
            "range (Dayarathna 2016); per-bit send/receive and storage from "
            "the CDN energy model of Bianco et al. 2016; software encoder "
            "(Penny 2016) and HEVC software decoder (Herglotz 2015) efforts"
        ),
        "server-low-offset": (
            "as server-default with the lower endpoint of the reported "
            "127 kWh-5.57 MWh per-server-year idle range (Dayarathna 2016)"
        ),
        "server-realtime": (
            "as server-default with hardware encoder (Zhang 2018) and "
            "hardware decoder (Herglotz 2018) efforts for real-time ingest"
        ),
        "server-social": (
            "as server-default with a 1 kJ/s encoder effort typical of bulk "
            "transcoding pipelines, between the hardware and software "
            "endpoints"
        ),
        "server-unit-pue": (
            "as server-default with PUE held at 1.0 for per-video what-if "
            "comparisons"
        ),
        "fixed-bb": (
            "Malmodin & Lundén 2020 fixed broadband access: 1.5 W per "
            "active line plus 0.03 W/Mbps"
        ),
        "mobile-4g": (
            "Malmodin & Lundén 2020 mobile broadband access (4G): 0.2 W per "
            "subscriber plus 0.03 W/Mbps"
        ),
        "optical-link": "Malmodin & Lundén 2020 high-capacity optical link",
        "atlantic-cable": "Malmodin & Lundén 2020 Atlantic submarine cable",
    }
    return ParameterCatalog(devices, servers, networks, provenance)
