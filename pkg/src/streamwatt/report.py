"""Scenario evaluation and report emission.

``evaluate`` turns a validated Scenario into a hierarchical EnergyReport:
per-component totals (end-user terminals, provider, network), breakdowns
by device fleet and provider task, the network split into end-user and
CDN copy traffic, GHG totals, and an echo of every resolved parameter.
Reports serialize to JSON (full hierarchy) or CSV (one row per leaf).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .catalog import ParameterCatalog, builtin_catalog
from .model import (
    CarbonIntensity,
    StreamRequest,
    ghg_emissions,
    nw_request_energy,
    ut_request_energy,
)
from .scenario import Scenario
from .units import ENERGY, SECONDS_PER_YEAR, Quantity, display

__all__ = ["EnergyReport", "evaluate", "emit", "ghg_report"]

VP_TASKS = ("offset", "tx", "rx", "copies", "decoding", "encoding", "storage")

CSV_HEADER = "service,component,subcategory,value_kwh"


@dataclass(frozen=True)
class EnergyReport:
    """Yearly energy of one service, broken down three ways.

    All magnitudes are kWh floats; breakdown dicts sum to their parent
    totals exactly (the totals are computed as those sums).
    """

    scenario: str
    ut_by_device: dict[str, float]
    vp_by_task: dict[str, float]
    nw_ut: float
    nw_cdn: float
    carbon_intensity: float
    parameters: dict[str, dict]

    @property
    def ut_total(self) -> float:
        return sum(self.ut_by_device.values())

    @property
    def vp_total(self) -> float:
        return sum(self.vp_by_task.values())

    @property
    def nw_total(self) -> float:
        return self.nw_ut + self.nw_cdn

    @property
    def total(self) -> float:
        return self.ut_total + self.vp_total + self.nw_total

    @property
    def ghg_tonnes(self) -> float:
        return self.total * self.carbon_intensity / 1e6


def _fleet_request_energy(profile, workload, kind) -> Quantity:
    """Per-device yearly energy for one fleet, via the requested term."""
    total = Quantity(0.0, ENERGY)
    for spec in workload:
        if kind == "ut":
            e = ut_request_energy(profile, spec.request)
        else:
            e = nw_request_energy(profile, spec.request)
        total = total + spec.requests_per_year * e
    return total


def evaluate(scenario: Scenario, catalog: ParameterCatalog | None = None) -> EnergyReport:
    """Evaluate a scenario into its yearly EnergyReport.

    Deterministic: fleets, assets and tasks are accumulated in document
    order, so equal scenarios produce identical reports.
    """
    catalog = catalog or builtin_catalog()
    horizon_years = scenario.horizon.si / SECONDS_PER_YEAR
    parameters: dict[str, dict] = {"devices": {}, "servers": {}, "networks": {}}

    def echo_device(name):
        p = scenario.device(name, catalog)
        parameters["devices"][name] = {
            "p_offset": display(p.p_offset),
            "p_rx": display(p.p_rx),
            "p_tx": display(p.p_tx),
            "provenance": _provenance(name, scenario.device_profiles, catalog),
        }
        return p

    def echo_network(name):
        p = scenario.network(name, catalog)
        parameters["networks"][name] = {
            "p_offset": display(p.p_offset),
            "p_per_rate": p.p_per_rate.format("W/Mbps"),
            "provenance": _provenance(name, scenario.network_profiles, catalog),
        }
        return p

    # -- end-user terminals and their access-network traffic -----------
    ut_by_device: dict[str, float] = {}
    nw_ut = 0.0
    for fleet in scenario.device_fleets:
        device = echo_device(fleet.profile)
        network = echo_network(fleet.network)
        e_ut = _fleet_request_energy(device, fleet.workload, "ut")
        e_nw = _fleet_request_energy(network, fleet.workload, "nw")
        ut_by_device[fleet.name] = fleet.count * e_ut.kwh * horizon_years
        nw_ut += fleet.count * e_nw.kwh * horizon_years

    # -- provider tasks -------------------------------------------------
    vp_by_task = {task: 0.0 for task in VP_TASKS}
    nw_cdn = 0.0
    if scenario.server_fleet is not None:
        server = scenario.server(scenario.server_fleet.profile, catalog)
        parameters["servers"][scenario.server_fleet.profile] = {
            "pue": server.pue,
            "e_offset_year": display(server.e_offset_year),
            "e_send_per_bit": display(server.e_send_per_bit),
            "e_rx_per_bit": display(server.e_rx_per_bit),
            "e_store_per_bit_year": server.e_store_per_bit_year.format("Wh/MByte/year"),
            "p_dec": display(server.p_dec),
            "p_enc": display(server.p_enc),
            "provenance": _provenance(
                scenario.server_fleet.profile, scenario.server_profiles, catalog
            ),
        }
        pue = server.pue
        year = Quantity(float(SECONDS_PER_YEAR), scenario.horizon.dimension)

        vp_by_task["offset"] = (
            pue * scenario.server_fleet.count * server.e_offset_year.kwh * horizon_years
        )

        if scenario.server_fleet.provider_relay:
            tx = 0.0
            for fleet in scenario.device_fleets:
                for spec in fleet.workload:
                    if spec.request.direction.value == "tx":
                        continue
                    per = (spec.request.video_size * server.e_send_per_bit).kwh
                    tx += fleet.count * spec.requests_per_year * per
            vp_by_task["tx"] = pue * tx * horizon_years

        cdn_network = echo_network(scenario.cdn_network) if scenario.cdn_network else None

        rx = decoding = encoding = storage = copies = 0.0
        for asset in scenario.assets:
            sizes = [v.output_size for v in asset.variants]
            total_variant_bits = sum(s.si for s in sizes)
            if asset.uploaded:
                source = asset.upload_size
                if source is None and sizes:
                    source = max(sizes, key=lambda s: s.si)
                if source is not None:
                    rx += asset.count * (source * server.e_rx_per_bit).kwh
                decoding += asset.count * (server.p_dec * asset.duration).kwh
                for variant in asset.variants:
                    encoding += asset.count * (variant.p_enc * asset.duration).kwh
            stored_copies = asset.stored_on_surrogates + (1 if asset.stored_on_main else 0)
            if stored_copies and total_variant_bits:
                bits = Quantity(total_variant_bits, sizes[0].dimension)
                per_copy_year = (bits * server.e_store_per_bit_year * year).kwh
                storage += (
                    asset.count * stored_copies * per_copy_year * asset.stored_fraction_of_year
                )
            if asset.stored_on_surrogates and total_variant_bits:
                bits = Quantity(total_variant_bits, sizes[0].dimension)
                copies += asset.count * asset.stored_on_surrogates * (bits * server.e_send_per_bit).kwh
                if cdn_network is not None:
                    transfer = StreamRequest(asset.duration, bits / asset.duration)
                    nw_cdn += (
                        asset.count
                        * asset.stored_on_surrogates
                        * nw_request_energy(cdn_network, transfer).kwh
                    )
        vp_by_task["rx"] = pue * rx * horizon_years
        vp_by_task["decoding"] = pue * decoding * horizon_years
        vp_by_task["encoding"] = pue * encoding * horizon_years
        vp_by_task["storage"] = pue * storage * horizon_years
        vp_by_task["copies"] = pue * copies * horizon_years
        nw_cdn *= horizon_years

    return EnergyReport(
        scenario=scenario.name,
        ut_by_device=ut_by_device,
        vp_by_task=vp_by_task,
        nw_ut=nw_ut,
        nw_cdn=nw_cdn,
        carbon_intensity=scenario.carbon_intensity.grams_per_kwh,
        parameters=parameters,
    )


def _provenance(name: str, local: dict, catalog: ParameterCatalog) -> str:
    if name in local:
        return "scenario-local definition"
    return catalog.provenance.get(name, "")


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def report_tree(report: EnergyReport) -> dict:
    """The full JSON-ready hierarchy of a report."""
    return {
        "scenario": report.scenario,
        "energy_kwh": {
            "total": report.total,
            "ut": {"total": report.ut_total, "by_device": dict(report.ut_by_device)},
            "vp": {"total": report.vp_total, "by_task": dict(report.vp_by_task)},
            "nw": {"total": report.nw_total, "ut": report.nw_ut, "cdn": report.nw_cdn},
        },
        "ghg": {
            "carbon_intensity_g_per_kwh": report.carbon_intensity,
            "total_tonnes": report.ghg_tonnes,
        },
        "parameters": report.parameters,
    }


def _csv_rows(report: EnergyReport) -> list[str]:
    name = report.scenario
    rows = []
    for fleet, value in report.ut_by_device.items():
        rows.append(f"{name},UT,{fleet},{value:.15g}")
    for task, value in report.vp_by_task.items():
        rows.append(f"{name},VP,{task},{value:.15g}")
    rows.append(f"{name},NW,UT,{report.nw_ut:.15g}")
    rows.append(f"{name},NW,CDN,{report.nw_cdn:.15g}")
    for component, value in (
        ("UT", report.ut_total),
        ("VP", report.vp_total),
        ("NW", report.nw_total),
        ("all", report.total),
    ):
        rows.append(f"{name},total,{component},{value:.15g}")
    return rows


def emit(report: EnergyReport, format: str = "json") -> bytes:
    """Serialize a report. JSON keeps the hierarchy; CSV flattens to
    one (service, component, subcategory, kWh) row per leaf."""
    if format == "json":
        text = json.dumps(report_tree(report), indent=2, sort_keys=True)
        return (text + "\n").encode("utf-8")
    if format == "csv":
        return ("\n".join([CSV_HEADER] + _csv_rows(report)) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {format!r}")


def ghg_report(report: EnergyReport, ci: CarbonIntensity) -> dict[str, float]:
    """Per-component GHG mass in tonnes CO2E at the given intensity."""
    out = {}
    for component, kwh in (
        ("UT", report.ut_total),
        ("VP", report.vp_total),
        ("NW", report.nw_total),
        ("total", report.total),
    ):
        grams = ghg_emissions(Quantity(kwh * 3.6e6, ENERGY), ci)
        out[component] = grams.to("t")
    return out
