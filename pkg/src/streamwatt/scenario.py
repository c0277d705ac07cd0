"""Declarative service scenarios.

A scenario is a self-contained JSON description of one online video
service: device fleets with yearly workloads, the provider's asset
catalog and server fleet, network assignments, and a grid carbon
intensity. All physical values are strings with explicit units
("100 W", "5 Mbps"). The shipped reference scenarios live as JSON
documents next to this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .catalog import ParameterCatalog, builtin_catalog
from .model import (
    CarbonIntensity,
    DevicePowerProfile,
    Direction,
    EncodeVariant,
    NetworkProfile,
    ServerProfile,
    StreamRequest,
)
from .units import (
    CARBON_INTENSITY,
    DATA_RATE,
    DATA_SIZE,
    ENERGY,
    ENERGY_PER_BIT,
    ENERGY_PER_BIT_YEAR,
    POWER,
    TIME,
    Quantity,
    UnitError,
    parse_quantity,
)

__all__ = [
    "ScenarioError",
    "WorkloadSpec",
    "DeviceFleet",
    "VideoAssetSpec",
    "ServerFleet",
    "VideoCaseOption",
    "VideoCase",
    "Scenario",
    "load_scenario",
    "load_scenario_file",
    "serialize_scenario",
    "builtin_scenarios",
    "builtin_scenario",
    "builtin_scenario_document",
    "BUILTIN_SCENARIO_NAMES",
]


class ScenarioError(ValueError):
    """Scenario document rejected; ``code`` is machine readable.

    Codes: parse-error, invalid-structure, unit-error, unit-mismatch,
    unresolved-reference, invalid-value.
    """

    def __init__(self, code: str, message: str, path: str = ""):
        self.code = code
        self.path = path
        super().__init__(f"[{code}] {path}: {message}" if path else f"[{code}] {message}")


def _fail(code: str, message: str, path: str = "") -> None:
    raise ScenarioError(code, message, path)


def _quantity(node, path: str, expect) -> Quantity:
    if isinstance(node, dict):
        if set(node) != {"value", "unit"}:
            _fail("invalid-structure", "quantity objects need exactly {value, unit}", path)
        node = f"{node['value']} {node['unit']}"
    if not isinstance(node, str):
        _fail(
            "invalid-structure",
            "quantities must be '<number> <unit>' strings or {value, unit} objects",
            path,
        )
    try:
        q = parse_quantity(node)
    except UnitError as exc:
        _fail("unit-error", str(exc), path)
    except ValueError as exc:
        _fail("invalid-value", str(exc), path)
    if q.dimension != expect:
        _fail(
            "unit-mismatch",
            f"{node!r} has dimension [{q.dimension}], expected [{expect}]",
            path,
        )
    return q


def _number(node, path: str, minimum: float | None = None) -> float:
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        _fail("invalid-structure", "expected a number", path)
    value = float(node)
    if minimum is not None and value < minimum:
        _fail("invalid-value", f"must be >= {minimum}, got {value}", path)
    return value


def _string(node, path: str) -> str:
    if not isinstance(node, str) or not node:
        _fail("invalid-structure", "expected a non-empty string", path)
    return node


def _obj(node, path: str) -> dict:
    if not isinstance(node, dict):
        _fail("invalid-structure", "expected an object", path)
    return node


def _list(node, path: str) -> list:
    if not isinstance(node, list):
        _fail("invalid-structure", "expected an array", path)
    return node


# ---------------------------------------------------------------------------
# Scenario data model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WorkloadSpec:
    """One kind of streaming request, repeated N times per device-year."""

    requests_per_year: float
    request: StreamRequest


@dataclass(frozen=True)
class DeviceFleet:
    """N identical devices sharing one profile, workload and access network."""

    name: str
    profile: str
    count: float
    workload: tuple[WorkloadSpec, ...]
    network: str


@dataclass(frozen=True)
class VideoAssetSpec:
    """A group of identical videos in the provider's catalog."""

    name: str
    count: float
    duration: Quantity
    variants: tuple[EncodeVariant, ...]
    uploaded: bool = True
    upload_size: Quantity | None = None
    request_forecast: float = 0.0
    stored_on_surrogates: int = 0
    stored_on_main: bool = True
    stored_fraction_of_year: float = 1.0


@dataclass(frozen=True)
class ServerFleet:
    """The provider's server pool; ``provider_relay`` is false for P2P."""

    profile: str
    count: float
    provider_relay: bool = True


@dataclass(frozen=True)
class VideoCaseOption:
    """One encoder choice for the per-video what-if study."""

    label: str
    p_enc: Quantity
    output_size: Quantity


@dataclass(frozen=True)
class VideoCase:
    """Parameters of the single-video encoder/request trade-off study."""

    duration: Quantity
    options: tuple[VideoCaseOption, ...]
    viewer_profile: str
    network: str
    server: str
    surrogates: int = 0
    requests: float = 1.0


@dataclass(frozen=True)
class Scenario:
    name: str
    device_fleets: tuple[DeviceFleet, ...]
    assets: tuple[VideoAssetSpec, ...]
    server_fleet: ServerFleet | None
    cdn_network: str | None
    carbon_intensity: CarbonIntensity
    horizon: Quantity
    device_profiles: dict[str, DevicePowerProfile] = field(default_factory=dict)
    server_profiles: dict[str, ServerProfile] = field(default_factory=dict)
    network_profiles: dict[str, NetworkProfile] = field(default_factory=dict)
    video_case: VideoCase | None = None

    # -- profile resolution against the builtin catalog ----------------

    def device(self, name: str, catalog: ParameterCatalog) -> DevicePowerProfile:
        if name in self.device_profiles:
            return self.device_profiles[name]
        return catalog.device_profiles[name]

    def server(self, name: str, catalog: ParameterCatalog) -> ServerProfile:
        if name in self.server_profiles:
            return self.server_profiles[name]
        return catalog.server_profiles[name]

    def network(self, name: str, catalog: ParameterCatalog) -> NetworkProfile:
        if name in self.network_profiles:
            return self.network_profiles[name]
        return catalog.network_profiles[name]


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_DIRECTIONS = {d.value: d for d in Direction}


def _parse_workload(node, path: str) -> WorkloadSpec:
    node = _obj(node, path)
    duration = _quantity(node.get("duration"), f"{path}.duration", TIME)
    bitrate = _quantity(node.get("bitrate"), f"{path}.bitrate", DATA_RATE)
    direction = node.get("direction", "rx")
    if direction not in _DIRECTIONS:
        _fail("invalid-value", f"unknown direction {direction!r}", f"{path}.direction")
    video_size = None
    if "video_size" in node:
        video_size = _quantity(node["video_size"], f"{path}.video_size", DATA_SIZE)
    count = _number(node.get("requests_per_year", 0), f"{path}.requests_per_year", 0.0)
    try:
        request = StreamRequest(duration, bitrate, _DIRECTIONS[direction], video_size)
    except ValueError as exc:
        _fail("invalid-value", str(exc), path)
    return WorkloadSpec(count, request)


def _parse_variant(node, path: str) -> EncodeVariant:
    node = _obj(node, path)
    try:
        return EncodeVariant(
            label=_string(node.get("label"), f"{path}.label"),
            p_enc=_quantity(node.get("p_enc"), f"{path}.p_enc", POWER),
            output_size=_quantity(node.get("output_size"), f"{path}.output_size", DATA_SIZE),
        )
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        _fail("invalid-value", str(exc), path)


def _parse_asset(node, path: str) -> VideoAssetSpec:
    node = _obj(node, path)
    variants = tuple(
        _parse_variant(v, f"{path}.variants[{i}]")
        for i, v in enumerate(_list(node.get("variants", []), f"{path}.variants"))
    )
    upload_size = None
    if "upload_size" in node:
        upload_size = _quantity(node["upload_size"], f"{path}.upload_size", DATA_SIZE)
    fraction = _number(node.get("stored_fraction_of_year", 1.0), f"{path}.stored_fraction_of_year", 0.0)
    if fraction > 1.0:
        _fail("invalid-value", "stored_fraction_of_year must be <= 1", path)
    return VideoAssetSpec(
        name=_string(node.get("name"), f"{path}.name"),
        count=_number(node.get("count", 1), f"{path}.count", 0.0),
        duration=_quantity(node.get("duration"), f"{path}.duration", TIME),
        variants=variants,
        uploaded=bool(node.get("uploaded", True)),
        upload_size=upload_size,
        request_forecast=_number(node.get("request_forecast", 0), f"{path}.request_forecast", 0.0),
        stored_on_surrogates=int(_number(node.get("stored_on_surrogates", 0), f"{path}.stored_on_surrogates", 0.0)),
        stored_on_main=bool(node.get("stored_on_main", True)),
        stored_fraction_of_year=fraction,
    )


def _parse_device_profile(name, node, path) -> DevicePowerProfile:
    node = _obj(node, path)
    return DevicePowerProfile(
        name=name,
        p_offset=_quantity(node.get("p_offset"), f"{path}.p_offset", POWER),
        p_rx=_quantity(node.get("p_rx", "0 W"), f"{path}.p_rx", POWER),
        p_tx=_quantity(node.get("p_tx", "0 W"), f"{path}.p_tx", POWER),
    )


def _parse_server_profile(name, node, path) -> ServerProfile:
    node = _obj(node, path)
    try:
        return ServerProfile(
            name=name,
            pue=_number(node.get("pue", 1.0), f"{path}.pue"),
            e_offset_year=_quantity(node.get("e_offset_year"), f"{path}.e_offset_year", ENERGY),
            e_send_per_bit=_quantity(node.get("e_send_per_bit"), f"{path}.e_send_per_bit", ENERGY_PER_BIT),
            e_rx_per_bit=_quantity(node.get("e_rx_per_bit"), f"{path}.e_rx_per_bit", ENERGY_PER_BIT),
            e_store_per_bit_year=_quantity(
                node.get("e_store_per_bit_year"), f"{path}.e_store_per_bit_year", ENERGY_PER_BIT_YEAR
            ),
            p_dec=_quantity(node.get("p_dec", "0 W"), f"{path}.p_dec", POWER),
            p_enc=_quantity(node.get("p_enc", "0 W"), f"{path}.p_enc", POWER),
        )
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        _fail("invalid-value", str(exc), path)


def _parse_network_profile(name, node, path) -> NetworkProfile:
    node = _obj(node, path)
    return NetworkProfile(
        name=name,
        p_offset=_quantity(node.get("p_offset", "0 W"), f"{path}.p_offset", POWER),
        p_per_rate=_quantity(node.get("p_per_rate", "0 W/Mbps"), f"{path}.p_per_rate", ENERGY_PER_BIT),
    )


def _parse_video_case(node, path, known_devices, known_servers, known_networks) -> VideoCase:
    node = _obj(node, path)
    options = tuple(
        VideoCaseOption(
            label=_string(o.get("label"), f"{path}.options[{i}].label"),
            p_enc=_quantity(o.get("p_enc"), f"{path}.options[{i}].p_enc", POWER),
            output_size=_quantity(o.get("output_size"), f"{path}.options[{i}].output_size", DATA_SIZE),
        )
        for i, o in enumerate(_list(node.get("options"), f"{path}.options"))
    )
    if not options:
        _fail("invalid-value", "video_case needs at least one option", path)
    viewer = _string(node.get("viewer_profile"), f"{path}.viewer_profile")
    network = _string(node.get("network"), f"{path}.network")
    server = _string(node.get("server"), f"{path}.server")
    for ref, pool, kind in (
        (viewer, known_devices, "device"),
        (network, known_networks, "network"),
        (server, known_servers, "server"),
    ):
        if ref not in pool:
            _fail("unresolved-reference", f"unknown {kind} profile {ref!r}", path)
    return VideoCase(
        duration=_quantity(node.get("duration"), f"{path}.duration", TIME),
        options=options,
        viewer_profile=viewer,
        network=network,
        server=server,
        surrogates=int(_number(node.get("surrogates", 0), f"{path}.surrogates", 0.0)),
        requests=_number(node.get("requests", 1), f"{path}.requests", 0.0),
    )


def load_scenario(document: str | dict, catalog: ParameterCatalog | None = None) -> Scenario:
    """Parse and validate a scenario document (JSON text or object tree)."""
    catalog = catalog or builtin_catalog()
    if isinstance(document, str):
        try:
            tree = json.loads(document)
        except json.JSONDecodeError as exc:
            _fail("parse-error", f"invalid JSON at line {exc.lineno} col {exc.colno}: {exc.msg}")
    else:
        tree = document
    tree = _obj(tree, "$")

    name = _string(tree.get("name"), "$.name")

    local_devices = {
        pname: _parse_device_profile(pname, pnode, f"$.device_profiles.{pname}")
        for pname, pnode in _obj(tree.get("device_profiles", {}), "$.device_profiles").items()
    }
    local_servers = {
        pname: _parse_server_profile(pname, pnode, f"$.server_profiles.{pname}")
        for pname, pnode in _obj(tree.get("server_profiles", {}), "$.server_profiles").items()
    }
    local_networks = {
        pname: _parse_network_profile(pname, pnode, f"$.network_profiles.{pname}")
        for pname, pnode in _obj(tree.get("network_profiles", {}), "$.network_profiles").items()
    }
    known_devices = set(local_devices) | set(catalog.device_profiles)
    known_servers = set(local_servers) | set(catalog.server_profiles)
    known_networks = set(local_networks) | set(catalog.network_profiles)

    assignments = _obj(tree.get("network_assignments", {}), "$.network_assignments")
    fleet_networks = _obj(assignments.get("fleets", {}), "$.network_assignments.fleets")
    cdn_network = assignments.get("cdn")
    if cdn_network is not None:
        cdn_network = _string(cdn_network, "$.network_assignments.cdn")
        if cdn_network not in known_networks:
            _fail("unresolved-reference", f"unknown network profile {cdn_network!r}", "$.network_assignments.cdn")

    fleets = []
    for i, fnode in enumerate(_list(tree.get("device_fleets", []), "$.device_fleets")):
        path = f"$.device_fleets[{i}]"
        fnode = _obj(fnode, path)
        fname = _string(fnode.get("name"), f"{path}.name")
        profile = _string(fnode.get("profile"), f"{path}.profile")
        if profile not in known_devices:
            _fail("unresolved-reference", f"unknown device profile {profile!r}", f"{path}.profile")
        network = fleet_networks.get(fname)
        if network is None:
            _fail("unresolved-reference", f"fleet {fname!r} has no network assignment", f"{path}")
        network = _string(network, f"$.network_assignments.fleets.{fname}")
        if network not in known_networks:
            _fail("unresolved-reference", f"unknown network profile {network!r}", f"$.network_assignments.fleets.{fname}")
        workload = tuple(
            _parse_workload(w, f"{path}.workload[{j}]")
            for j, w in enumerate(_list(fnode.get("workload", []), f"{path}.workload"))
        )
        fleets.append(
            DeviceFleet(
                name=fname,
                profile=profile,
                count=_number(fnode.get("count", 0), f"{path}.count", 0.0),
                workload=workload,
                network=network,
            )
        )

    assets = tuple(
        _parse_asset(a, f"$.assets[{i}]")
        for i, a in enumerate(_list(tree.get("assets", []), "$.assets"))
    )

    server_fleet = None
    if "server_fleet" in tree:
        snode = _obj(tree["server_fleet"], "$.server_fleet")
        sprofile = _string(snode.get("profile"), "$.server_fleet.profile")
        if sprofile not in known_servers:
            _fail("unresolved-reference", f"unknown server profile {sprofile!r}", "$.server_fleet.profile")
        server_fleet = ServerFleet(
            profile=sprofile,
            count=_number(snode.get("count", 1), "$.server_fleet.count", 0.0),
            provider_relay=bool(snode.get("provider_relay", True)),
        )

    for i, asset in enumerate(assets):
        limit = (server_fleet.count - 1) if server_fleet else 0
        if asset.stored_on_surrogates > max(limit, 0):
            _fail(
                "invalid-value",
                f"asset {asset.name!r} stored on {asset.stored_on_surrogates} surrogates "
                f"but the fleet has only {int(max(limit, 0))}",
                f"$.assets[{i}].stored_on_surrogates",
            )
        if (asset.uploaded or asset.stored_on_surrogates or asset.variants) and server_fleet is None:
            _fail("invalid-value", f"asset {asset.name!r} needs a server_fleet", f"$.assets[{i}]")

    ci_node = tree.get("carbon_intensity", "0 g/kWh")
    ci = CarbonIntensity(_quantity(ci_node, "$.carbon_intensity", CARBON_INTENSITY).to("g/kWh"))

    horizon = _quantity(tree.get("horizon", "1 year"), "$.horizon", TIME)
    if horizon.si <= 0:
        _fail("invalid-value", "horizon must be > 0", "$.horizon")

    video_case = None
    if "video_case" in tree:
        video_case = _parse_video_case(
            tree["video_case"], "$.video_case", known_devices, known_servers, known_networks
        )

    return Scenario(
        name=name,
        device_fleets=tuple(fleets),
        assets=assets,
        server_fleet=server_fleet,
        cdn_network=cdn_network,
        carbon_intensity=ci,
        horizon=horizon,
        device_profiles=local_devices,
        server_profiles=local_servers,
        network_profiles=local_networks,
        video_case=video_case,
    )


def load_scenario_file(path: str | Path, catalog: ParameterCatalog | None = None) -> Scenario:
    path = Path(path)
    if not path.is_file():
        _fail("unresolved-reference", f"scenario file not found: {path}")
    return load_scenario(path.read_text(encoding="utf-8"), catalog)


# ---------------------------------------------------------------------------
# Serialization (SI-unit strings for exact round-trips)
# ---------------------------------------------------------------------------


def _si(q: Quantity, unit: str) -> str:
    return f"{q.si!r} {unit}"


def _serialize_workload(w: WorkloadSpec) -> dict:
    out = {
        "requests_per_year": w.requests_per_year,
        "duration": _si(w.request.duration, "s"),
        "bitrate": _si(w.request.bitrate, "bit/s"),
        "direction": w.request.direction.value,
    }
    derived = w.request.bitrate * w.request.duration
    if w.request.video_size.si != derived.si:
        out["video_size"] = _si(w.request.video_size, "bit")
    return out


def _serialize_variant(v: EncodeVariant) -> dict:
    return {
        "label": v.label,
        "p_enc": _si(v.p_enc, "W"),
        "output_size": _si(v.output_size, "bit"),
    }


def serialize_scenario(s: Scenario) -> dict:
    """Scenario back to a document tree; reparsing yields an equal Scenario."""
    tree: dict = {"name": s.name}
    if s.device_profiles:
        tree["device_profiles"] = {
            n: {"p_offset": _si(p.p_offset, "W"), "p_rx": _si(p.p_rx, "W"), "p_tx": _si(p.p_tx, "W")}
            for n, p in s.device_profiles.items()
        }
    if s.server_profiles:
        tree["server_profiles"] = {
            n: {
                "pue": p.pue,
                "e_offset_year": _si(p.e_offset_year, "J"),
                "e_send_per_bit": _si(p.e_send_per_bit, "J/bit"),
                "e_rx_per_bit": _si(p.e_rx_per_bit, "J/bit"),
                "e_store_per_bit_year": _si(p.e_store_per_bit_year, "J/bit/s"),
                "p_dec": _si(p.p_dec, "W"),
                "p_enc": _si(p.p_enc, "W"),
            }
            for n, p in s.server_profiles.items()
        }
    if s.network_profiles:
        tree["network_profiles"] = {
            n: {"p_offset": _si(p.p_offset, "W"), "p_per_rate": _si(p.p_per_rate, "J/bit")}
            for n, p in s.network_profiles.items()
        }
    tree["device_fleets"] = [
        {
            "name": f.name,
            "profile": f.profile,
            "count": f.count,
            "workload": [_serialize_workload(w) for w in f.workload],
        }
        for f in s.device_fleets
    ]
    tree["assets"] = [
        {
            "name": a.name,
            "count": a.count,
            "duration": _si(a.duration, "s"),
            "variants": [_serialize_variant(v) for v in a.variants],
            "uploaded": a.uploaded,
            **({"upload_size": _si(a.upload_size, "bit")} if a.upload_size is not None else {}),
            "request_forecast": a.request_forecast,
            "stored_on_surrogates": a.stored_on_surrogates,
            "stored_on_main": a.stored_on_main,
            "stored_fraction_of_year": a.stored_fraction_of_year,
        }
        for a in s.assets
    ]
    if s.server_fleet is not None:
        tree["server_fleet"] = {
            "profile": s.server_fleet.profile,
            "count": s.server_fleet.count,
            "provider_relay": s.server_fleet.provider_relay,
        }
    assignments: dict = {"fleets": {f.name: f.network for f in s.device_fleets}}
    if s.cdn_network is not None:
        assignments["cdn"] = s.cdn_network
    tree["network_assignments"] = assignments
    tree["carbon_intensity"] = f"{s.carbon_intensity.grams_per_kwh!r} g/kWh"
    tree["horizon"] = _si(s.horizon, "s")
    if s.video_case is not None:
        vc = s.video_case
        tree["video_case"] = {
            "duration": _si(vc.duration, "s"),
            "options": [
                {"label": o.label, "p_enc": _si(o.p_enc, "W"), "output_size": _si(o.output_size, "bit")}
                for o in vc.options
            ],
            "viewer_profile": vc.viewer_profile,
            "network": vc.network,
            "server": vc.server,
            "surrogates": vc.surrogates,
            "requests": vc.requests,
        }
    return tree


# ---------------------------------------------------------------------------
# Built-in reference scenarios
# ---------------------------------------------------------------------------

BUILTIN_SCENARIO_NAMES = (
    "on-demand",
    "iptv",
    "social-network",
    "teleconference",
    "single-video",
)


def _data_text(filename: str) -> str:
    return resources.files("streamwatt").joinpath("data", filename).read_text(encoding="utf-8")


def builtin_scenario_document(name: str) -> dict:
    """The raw document tree of a shipped scenario (for overrides)."""
    if name not in BUILTIN_SCENARIO_NAMES:
        _fail("unresolved-reference", f"no builtin scenario named {name!r}")
    return json.loads(_data_text(f"{name}.json"))


def builtin_scenario(name: str, catalog: ParameterCatalog | None = None) -> Scenario:
    if name not in BUILTIN_SCENARIO_NAMES:
        _fail("unresolved-reference", f"no builtin scenario named {name!r}")
    return load_scenario(_data_text(f"{name}.json"), catalog)


def builtin_scenarios(catalog: ParameterCatalog | None = None) -> list[Scenario]:
    """The shipped reference scenarios, in a stable order."""
    catalog = catalog or builtin_catalog()
    return [builtin_scenario(name, catalog) for name in BUILTIN_SCENARIO_NAMES]
