import json

import pytest

from streamwatt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_csv_contains_ut_total(capsys):
    code, out, _ = run(capsys, "eval", "--scenario", "builtin:on-demand", "--format", "csv")
    assert code == 0
    assert "on-demand,total,UT,3650000000" in out


def test_eval_json_structure(capsys):
    code, out, _ = run(capsys, "eval", "--scenario", "builtin:teleconference")
    assert code == 0
    tree = json.loads(out)
    assert tree["energy_kwh"]["ut"]["total"] == pytest.approx(1.224e9, rel=5e-3)


def test_missing_file_exits_one(capsys):
    code, out, err = run(capsys, "eval", "--scenario", "missing.json")
    assert code == 1
    assert "unresolved-reference" in err


def test_invalid_override_exits_one(capsys):
    code, _, err = run(
        capsys, "eval", "--scenario", "builtin:on-demand",
        "--override", 'device_fleets.0.workload.0.bitrate="5 W"',
    )
    assert code == 1
    assert "unit-mismatch" in err


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["eval"])  # --scenario missing
    assert exc.value.code == 2


def test_override_roundtrips_into_provenance_echo(capsys):
    code, out, _ = run(
        capsys, "eval", "--scenario", "builtin:on-demand",
        "--override", 'device_profiles.tv.p_offset="150 W"',
    )
    assert code == 0
    tree = json.loads(out)
    echo = tree["parameters"]["devices"]["tv"]
    assert echo["p_offset"].startswith("150 W")
    assert echo["provenance"] == "scenario-local definition"
    assert tree["energy_kwh"]["ut"]["total"] == pytest.approx(1.5 * 3.65e9)


def test_sweep_reproduces_savings_endpoints(capsys):
    code, out, _ = run(
        capsys, "sweep", "--scenario", "builtin:single-video",
        "--param", "forecast", "--grid", "1,1e3,1e6", "--format", "csv",
    )
    assert code == 0
    rows = {}
    for line in out.splitlines()[1:]:
        count, label, kwh = line.split(",")
        rows[(float(count), label)] = float(kwh)
    save_at_1 = rows[(1, "high-effort")] - rows[(1, "low-effort")]
    assert save_at_1 == pytest.approx(191, rel=0.10)
    save_at_1e6 = rows[(1e6, "low-effort")] - rows[(1e6, "high-effort")]
    assert save_at_1e6 == pytest.approx(31.8e3, rel=0.10)


def test_optimize_json(capsys):
    code, out, _ = run(capsys, "optimize", "--scenario", "builtin:single-video")
    assert code == 0
    tree = json.loads(out)
    assert 1000 < tree["crossover"]["requests"] < 10000
    totals = tree["assignment"]["policies_kwh"]
    assert totals["optimal"] <= min(totals["high-effort"], totals["low-effort"])


def test_compare_two_scenarios(capsys):
    code, out, _ = run(
        capsys, "compare",
        "--scenario", "builtin:on-demand", "--scenario", "builtin:iptv",
        "--carbon-intensity", "350 g/kWh",
    )
    assert code == 0
    tree = json.loads(out)
    assert len(tree) == 2
    assert tree[0]["delta_total_kwh"] == 0.0
    assert tree[1]["ghg"]["total_tonnes"] > 0


def test_catalog_dump(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    tree = json.loads(out)
    assert tree["devices"]["tv"]["p_offset"] == "100 W"
    assert "Bianco" in tree["servers"]["server-default"]["provenance"]
    assert tree["networks"]["fixed-bb"]["p_per_rate"].startswith("0.03")


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "eval", "--scenario", "builtin:iptv", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["scenario"] == "iptv"


def test_plot_flag_renders_figures(tmp_path, capsys):
    code, _, err = run(
        capsys, "eval", "--scenario", "builtin:on-demand",
        "--out", str(tmp_path / "r.json"), "--plot", str(tmp_path),
    )
    assert code == 0
    written = sorted(p.name for p in tmp_path.glob("*.png"))
    assert "on-demand-components.png" in written
    assert "on-demand-vp-by-task.png" in written


def test_identical_invocations_byte_identical(capsys):
    _, first, _ = run(capsys, "eval", "--scenario", "builtin:social-network")
    _, second, _ = run(capsys, "eval", "--scenario", "builtin:social-network")
    assert first == second
