"""Command line interface.

Subcommands: eval, sweep, optimize, compare, catalog. Scenarios are
selected with --scenario, either a file path or a "builtin:<name>" URI.
The artifact (JSON or CSV) goes to stdout or --out; diagnostics go to
stderr. Exit codes: 0 success, 1 validation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import optimizer
from .catalog import builtin_catalog
from .model import CarbonIntensity
from .report import emit, evaluate, ghg_report, report_tree
from .scenario import (
    BUILTIN_SCENARIO_NAMES,
    Scenario,
    ScenarioError,
    builtin_scenario_document,
    load_scenario,
)
from .units import CARBON_INTENSITY, UnitError, parse_quantity

__all__ = ["main", "build_parser"]


# ---------------------------------------------------------------------------
# Scenario loading with overrides
# ---------------------------------------------------------------------------


def _catalog_profile_doc(kind: str, name: str) -> dict:
    """Serialize one builtin catalog profile so overrides can shadow it."""
    catalog = builtin_catalog()
    if kind == "device_profiles":
        p = catalog.device_profiles[name]
        return {
            "p_offset": f"{p.p_offset.si!r} W",
            "p_rx": f"{p.p_rx.si!r} W",
            "p_tx": f"{p.p_tx.si!r} W",
        }
    if kind == "server_profiles":
        p = catalog.server_profiles[name]
        return {
            "pue": p.pue,
            "e_offset_year": f"{p.e_offset_year.si!r} J",
            "e_send_per_bit": f"{p.e_send_per_bit.si!r} J/bit",
            "e_rx_per_bit": f"{p.e_rx_per_bit.si!r} J/bit",
            "e_store_per_bit_year": f"{p.e_store_per_bit_year.si!r} J/bit/s",
            "p_dec": f"{p.p_dec.si!r} W",
            "p_enc": f"{p.p_enc.si!r} W",
        }
    p = catalog.network_profiles[name]
    return {"p_offset": f"{p.p_offset.si!r} W", "p_per_rate": f"{p.p_per_rate.si!r} J/bit"}


def _coerce_override_value(raw: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def _apply_override(tree: dict, spec: str) -> None:
    if "=" not in spec:
        raise ScenarioError("invalid-value", f"override {spec!r} is not of the form path=value")
    dotted, raw = spec.split("=", 1)
    parts = dotted.strip().split(".")
    if not parts or not all(parts):
        raise ScenarioError("invalid-value", f"override path {dotted!r} is malformed")

    # Shadowing a catalog profile: seed the document entry from the catalog
    # first so a single field can be patched.
    if parts[0] in ("device_profiles", "server_profiles", "network_profiles") and len(parts) >= 2:
        section = tree.setdefault(parts[0], {})
        catalog = builtin_catalog()
        pool = {
            "device_profiles": catalog.device_profiles,
            "server_profiles": catalog.server_profiles,
            "network_profiles": catalog.network_profiles,
        }[parts[0]]
        if parts[1] not in section:
            if parts[1] not in pool:
                raise ScenarioError(
                    "unresolved-reference", f"override references unknown profile {parts[1]!r}"
                )
            section[parts[1]] = _catalog_profile_doc(parts[0], parts[1])

    node = tree
    for i, key in enumerate(parts[:-1]):
        if isinstance(node, list):
            try:
                node = node[int(key)]
            except (ValueError, IndexError):
                raise ScenarioError("invalid-value", f"override path {dotted!r}: bad index {key!r}")
        elif isinstance(node, dict):
            if key not in node:
                node[key] = {}
            node = node[key]
        else:
            raise ScenarioError("invalid-value", f"override path {dotted!r} descends into a leaf")
    last = parts[-1]
    value = _coerce_override_value(raw)
    if isinstance(node, list):
        try:
            node[int(last)] = value
        except (ValueError, IndexError):
            raise ScenarioError("invalid-value", f"override path {dotted!r}: bad index {last!r}")
    elif isinstance(node, dict):
        node[last] = value
    else:
        raise ScenarioError("invalid-value", f"override path {dotted!r} descends into a leaf")


def _scenario_document(ref: str) -> dict:
    if ref.startswith("builtin:"):
        return builtin_scenario_document(ref[len("builtin:"):])
    path = Path(ref)
    if not path.is_file():
        raise ScenarioError("unresolved-reference", f"scenario file not found: {ref}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            "parse-error", f"invalid JSON at line {exc.lineno} col {exc.colno}: {exc.msg}", ref
        )


def _load(ref: str, overrides: list[str] | None = None) -> Scenario:
    tree = _scenario_document(ref)
    for spec in overrides or []:
        _apply_override(tree, spec)
    return load_scenario(tree)


def _write(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)


def _json_bytes(tree) -> bytes:
    return (json.dumps(tree, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _carbon(args) -> CarbonIntensity | None:
    if args.carbon_intensity is None:
        return None
    q = parse_quantity(args.carbon_intensity, expect=CARBON_INTENSITY)
    return CarbonIntensity(q.to("g/kWh"))


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_eval(args) -> int:
    scenario = _load(args.scenario, args.override)
    if args.carbon_intensity is not None:
        scenario = _replace_carbon(scenario, _carbon(args))
    report = evaluate(scenario)
    _write(emit(report, args.format), args.out)
    if args.plot:
        from .plots import render_report_figures

        for path in render_report_figures(report, args.plot):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _replace_carbon(scenario: Scenario, ci: CarbonIntensity) -> Scenario:
    from dataclasses import replace

    return replace(scenario, carbon_intensity=ci)


def _cmd_sweep(args) -> int:
    scenario = _load(args.scenario, args.override)
    grid = [float(x) for x in args.grid.split(",")] if args.grid else [1.0, 1e3, 1e6]
    if args.param != "forecast":
        return _sweep_parameter(args, scenario, grid)
    model = optimizer.video_cost_model(scenario)
    options = optimizer.case_options(scenario)
    rows = optimizer.sweep_requests(model, options, grid)
    if args.format == "json":
        tree = [{"requests": c, "option": label, "energy_kwh": kwh} for c, label, kwh in rows]
        _write(_json_bytes(tree), args.out)
    else:
        lines = ["requests,option,energy_kwh"]
        lines += [f"{c:.15g},{label},{kwh:.15g}" for c, label, kwh in rows]
        _write(("\n".join(lines) + "\n").encode("utf-8"), args.out)
    if args.plot:
        from .plots import plot_sweep

        Path(args.plot).mkdir(parents=True, exist_ok=True)
        path = plot_sweep(rows, Path(args.plot) / f"{scenario.name}-sweep.png")
        print(f"wrote {path}", file=sys.stderr)
    return 0


def _sweep_parameter(args, scenario: Scenario, grid: list[float]) -> int:
    """Sweep any numeric document field (dotted path) over the grid."""
    rows = []
    for value in grid:
        swept = _load(args.scenario, (args.override or []) + [f"{args.param}={value!r}"])
        rows.append((value, "total", evaluate(swept).total))
    if args.format == "json":
        tree = [{args.param: v, "energy_kwh": kwh} for v, _, kwh in rows]
        _write(_json_bytes(tree), args.out)
    else:
        lines = [f"{args.param},option,energy_kwh"]
        lines += [f"{v:.15g},total,{kwh:.15g}" for v, _, kwh in rows]
        _write(("\n".join(lines) + "\n").encode("utf-8"), args.out)
    return 0


def _cmd_optimize(args) -> int:
    scenario = _load(args.scenario, args.override)
    model = optimizer.video_cost_model(scenario)
    options = optimizer.case_options(scenario)
    tree: dict = {"scenario": scenario.name}

    if len(options) >= 2:
        cross = optimizer.crossover(model, options[0], options[1])
        tree["crossover"] = {
            "a": options[0].label,
            "b": options[1].label,
            "kind": cross.kind,
            "requests": cross.requests,
            "requests_ceil": cross.requests_ceil,
        }

    videos = optimizer.reference_video_set(model)
    result = optimizer.assign_optimal_encoders(videos, options)
    ci = _carbon(args) or scenario.carbon_intensity
    totals = dict(result.policy_totals)
    totals["optimal"] = result.optimal_total
    tree["assignment"] = {
        "policies_kwh": totals,
        "policies_ghg_t": {k: v * ci.grams_per_kwh / 1e6 for k, v in totals.items()},
        "chosen": {
            label: result.assignment.count(label) for label in {o.label for o in options}
        },
    }

    ladder = optimizer.reference_ladder()
    tree["ladder"] = {
        "variants": len(ladder),
        "delta_at_1e6_requests": optimizer.ladder_impact(model, ladder, 1e6, 10),
        "delta_at_1e3_requests": optimizer.ladder_impact(model, ladder, 1e3, 10),
    }

    counts = [int(x) for x in args.surrogates.split(",")] if args.surrogates else [1, 10]
    tree["surrogate_scaling"] = [
        {"servers": c, "energy_kwh": kwh}
        for c, kwh in optimizer.surrogate_scaling(scenario, counts)
    ]

    if args.format == "json":
        _write(_json_bytes(tree), args.out)
    else:
        lines = ["analysis,key,value"]
        if "crossover" in tree:
            lines.append(f"crossover,requests,{tree['crossover']['requests']}")
        for k, v in tree["assignment"]["policies_kwh"].items():
            lines.append(f"assignment,{k},{v:.15g}")
        lines.append(f"ladder,delta_at_1e6_requests,{tree['ladder']['delta_at_1e6_requests']:.15g}")
        lines.append(f"ladder,delta_at_1e3_requests,{tree['ladder']['delta_at_1e3_requests']:.15g}")
        for row in tree["surrogate_scaling"]:
            lines.append(f"surrogates,{row['servers']},{row['energy_kwh']:.15g}")
        _write(("\n".join(lines) + "\n").encode("utf-8"), args.out)
    return 0


def _cmd_compare(args) -> int:
    refs = args.scenario
    reports = [evaluate(_load(ref, args.override)) for ref in refs]
    ci = _carbon(args)
    base = reports[0]
    tree = []
    for report in reports:
        entry = report_tree(report)
        entry["delta_total_kwh"] = report.total - base.total
        if ci is not None:
            entry["ghg"] = {
                "carbon_intensity_g_per_kwh": ci.grams_per_kwh,
                **{f"{k.lower()}_tonnes": v for k, v in ghg_report(report, ci).items()},
            }
        tree.append(entry)
    if args.format == "json":
        _write(_json_bytes(tree), args.out)
    else:
        lines = ["scenario,component,value_kwh"]
        for report in reports:
            for comp, value in (
                ("UT", report.ut_total),
                ("VP", report.vp_total),
                ("NW", report.nw_total),
                ("all", report.total),
            ):
                lines.append(f"{report.scenario},{comp},{value:.15g}")
        _write(("\n".join(lines) + "\n").encode("utf-8"), args.out)
    return 0


def _cmd_catalog(args) -> int:
    catalog = builtin_catalog()
    from .units import display

    tree = {"devices": {}, "servers": {}, "networks": {}, "builtin_scenarios": list(BUILTIN_SCENARIO_NAMES)}
    for name, p in catalog.device_profiles.items():
        tree["devices"][name] = {
            "p_offset": display(p.p_offset),
            "p_rx": display(p.p_rx),
            "p_tx": display(p.p_tx),
            "provenance": catalog.provenance[name],
        }
    for name, p in catalog.server_profiles.items():
        tree["servers"][name] = {
            "pue": p.pue,
            "e_offset_year": display(p.e_offset_year),
            "e_send_per_bit": display(p.e_send_per_bit),
            "e_rx_per_bit": display(p.e_rx_per_bit),
            "e_store_per_bit_year": p.e_store_per_bit_year.format("Wh/MByte/year"),
            "p_dec": display(p.p_dec),
            "p_enc": display(p.p_enc),
            "provenance": catalog.provenance[name],
        }
    for name, p in catalog.network_profiles.items():
        tree["networks"][name] = {
            "p_offset": display(p.p_offset),
            "p_per_rate": p.p_per_rate.format("W/Mbps"),
            "provenance": catalog.provenance[name],
        }
    _write(_json_bytes(tree), args.out)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streamwatt",
        description="Energy and GHG accounting for online video services.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario_required=True):
        if scenario_required:
            p.add_argument("--scenario", required=True, help="file path or builtin:<name>")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write the artifact to a file instead of stdout")
        p.add_argument(
            "--override",
            action="append",
            metavar="PATH=VALUE",
            help="patch a document field before evaluation (repeatable)",
        )
        p.add_argument("--carbon-intensity", metavar="QTY", help='e.g. "350 g/kWh"')

    p_eval = sub.add_parser("eval", help="evaluate a scenario into an energy report")
    common(p_eval)
    p_eval.add_argument("--plot", metavar="DIR", help="also render report figures into DIR")
    p_eval.set_defaults(func=_cmd_eval)

    p_sweep = sub.add_parser("sweep", help="sweep request counts or any numeric parameter")
    common(p_sweep)
    p_sweep.add_argument("--param", default="forecast", help="'forecast' or a dotted document path")
    p_sweep.add_argument("--grid", help="comma-separated values, strictly increasing")
    p_sweep.add_argument("--plot", metavar="DIR", help="also render the sweep figure into DIR")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_opt = sub.add_parser("optimize", help="crossover, assignment, ladder and CDN-scaling reports")
    common(p_opt)
    p_opt.add_argument("--surrogates", help="comma-separated surrogate counts (default 1,10)")
    p_opt.set_defaults(func=_cmd_optimize)

    p_cmp = sub.add_parser("compare", help="side-by-side totals for several scenarios")
    p_cmp.add_argument("--scenario", action="append", required=True, help="repeatable")
    p_cmp.add_argument("--format", choices=("json", "csv"), default="json")
    p_cmp.add_argument("--out")
    p_cmp.add_argument("--override", action="append", metavar="PATH=VALUE")
    p_cmp.add_argument("--carbon-intensity", metavar="QTY")
    p_cmp.set_defaults(func=_cmd_compare)

    p_cat = sub.add_parser("catalog", help="dump the builtin parameter catalog with provenance")
    p_cat.add_argument("--format", choices=("json",), default="json")
    p_cat.add_argument("--out")
    p_cat.set_defaults(func=_cmd_catalog)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UnitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
