"""Figure rendering for reports and sweeps.

All figures are written straight to files with the Agg backend, so this
works headless. Each function returns the path it wrote.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .report import EnergyReport

__all__ = ["plot_ut_by_device", "plot_vp_by_task", "plot_components", "plot_sweep", "render_report_figures"]


def _bar_figure(labels, values, title, ylabel, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar(labels, values, color="tab:blue")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.tick_params(axis="x", rotation=30)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_ut_by_device(report: EnergyReport, path: str | Path) -> Path:
    """End-user energy per device fleet."""
    path = Path(path)
    items = sorted(report.ut_by_device.items())
    return _bar_figure(
        [k for k, _ in items],
        [v for _, v in items],
        f"{report.scenario}: end-user energy by device",
        "energy [kWh/year]",
        path,
    )


def plot_vp_by_task(report: EnergyReport, path: str | Path) -> Path:
    """Provider energy per task (offset, tx, rx, copies, ...)."""
    path = Path(path)
    items = list(report.vp_by_task.items())
    return _bar_figure(
        [k for k, _ in items],
        [v for _, v in items],
        f"{report.scenario}: provider energy by task",
        "energy [kWh/year]",
        path,
    )


def plot_components(report: EnergyReport, path: str | Path) -> Path:
    """The three top-level components side by side."""
    path = Path(path)
    return _bar_figure(
        ["end-user", "provider", "network"],
        [report.ut_total, report.vp_total, report.nw_total],
        f"{report.scenario}: energy by component",
        "energy [kWh/year]",
        path,
    )


def plot_sweep(rows: list[tuple[float, str, float]], path: str | Path, title: str = "request sweep") -> Path:
    """One line per option over the request-count grid (log-log)."""
    path = Path(path)
    series: dict[str, tuple[list, list]] = {}
    for count, label, kwh in rows:
        xs, ys = series.setdefault(label, ([], []))
        xs.append(count)
        ys.append(kwh)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, (xs, ys) in series.items():
        ax.plot(xs, ys, marker="o", label=label)
    if all(x > 0 for xs, _ in series.values() for x in xs):
        ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("requests")
    ax.set_ylabel("energy [kWh]")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_report_figures(report: EnergyReport, directory: str | Path) -> list[Path]:
    """Write the standard trio of report figures into a directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    stem = report.scenario
    written = [plot_components(report, directory / f"{stem}-components.png")]
    if report.ut_by_device:
        written.append(plot_ut_by_device(report, directory / f"{stem}-ut-by-device.png"))
    if any(report.vp_by_task.values()):
        written.append(plot_vp_by_task(report, directory / f"{stem}-vp-by-task.png"))
    return written
