import json

import pytest

from streamwatt.catalog import builtin_catalog
from streamwatt.scenario import (
    BUILTIN_SCENARIO_NAMES,
    ScenarioError,
    builtin_scenario,
    builtin_scenarios,
    load_scenario,
    serialize_scenario,
)


MINIMAL = {
    "name": "mini",
    "device_fleets": [
        {
            "name": "phones",
            "profile": "smartphone-galaxy-s3",
            "count": 10,
            "workload": [
                {"requests_per_year": 2, "duration": "300 s", "bitrate": "5 Mbps"}
            ],
        }
    ],
    "network_assignments": {"fleets": {"phones": "mobile-4g"}},
    "carbon_intensity": "350 g/kWh",
}


def doc(**changes):
    tree = json.loads(json.dumps(MINIMAL))
    tree.update(changes)
    return tree


def test_load_minimal():
    s = load_scenario(doc())
    assert s.name == "mini"
    assert s.device_fleets[0].count == 10
    assert s.device_fleets[0].network == "mobile-4g"
    assert s.horizon.to("year") == pytest.approx(1.0)
    assert s.carbon_intensity.grams_per_kwh == 350.0


def test_load_from_text():
    s = load_scenario(json.dumps(MINIMAL))
    assert s.name == "mini"


def test_parse_error_has_position():
    with pytest.raises(ScenarioError) as exc:
        load_scenario("{not json")
    assert exc.value.code == "parse-error"
    assert "line" in str(exc.value)


def test_unit_mismatch():
    bad = doc()
    bad["device_fleets"][0]["workload"][0]["bitrate"] = "5 W"
    with pytest.raises(ScenarioError) as exc:
        load_scenario(bad)
    assert exc.value.code == "unit-mismatch"


def test_unknown_unit():
    bad = doc()
    bad["device_fleets"][0]["workload"][0]["duration"] = "300 parsecs"
    with pytest.raises(ScenarioError) as exc:
        load_scenario(bad)
    assert exc.value.code == "unit-error"


def test_unresolved_profile():
    bad = doc()
    bad["device_fleets"][0]["profile"] = "tv-oled-2030"
    with pytest.raises(ScenarioError) as exc:
        load_scenario(bad)
    assert exc.value.code == "unresolved-reference"


def test_missing_network_assignment():
    bad = doc(network_assignments={"fleets": {}})
    with pytest.raises(ScenarioError) as exc:
        load_scenario(bad)
    assert exc.value.code == "unresolved-reference"


def test_invalid_value():
    bad = doc()
    bad["device_fleets"][0]["count"] = -1
    with pytest.raises(ScenarioError) as exc:
        load_scenario(bad)
    assert exc.value.code == "invalid-value"


def test_surrogates_exceed_fleet():
    bad = doc(
        assets=[
            {
                "name": "v",
                "count": 1,
                "duration": "100 s",
                "variants": [{"label": "a", "p_enc": "1 J/s", "output_size": "1 MByte"}],
                "stored_on_surrogates": 5,
            }
        ],
        server_fleet={"profile": "server-default", "count": 3},
        network_assignments={"fleets": {"phones": "mobile-4g"}, "cdn": "fixed-bb"},
    )
    with pytest.raises(ScenarioError) as exc:
        load_scenario(bad)
    assert exc.value.code == "invalid-value"


def test_quantity_object_form():
    tree = doc()
    tree["device_fleets"][0]["workload"][0]["bitrate"] = {"value": 5, "unit": "Mbps"}
    s = load_scenario(tree)
    assert s.device_fleets[0].workload[0].request.bitrate.to("Mbps") == pytest.approx(5)


def test_profile_shadowing():
    tree = doc(device_profiles={"tv": {"p_offset": "150 W"}})
    tree["device_fleets"][0]["profile"] = "tv"
    s = load_scenario(tree)
    catalog = builtin_catalog()
    assert s.device("tv", catalog).p_offset.si == 150.0
    # the catalog itself is untouched
    assert catalog.device("tv").p_offset.si == 100.0


def test_catalog_immutable():
    catalog = builtin_catalog()
    with pytest.raises(TypeError):
        catalog.device_profiles["tv"] = None


def test_round_trip():
    for name in BUILTIN_SCENARIO_NAMES:
        first = builtin_scenario(name)
        reparsed = load_scenario(serialize_scenario(first))
        assert reparsed == first, name


def test_builtin_scenarios_parametrization():
    by_name = {s.name: s for s in builtin_scenarios()}
    assert set(by_name) == set(BUILTIN_SCENARIO_NAMES)

    od = by_name["on-demand"]
    assert od.device_fleets[0].count == 1e8
    assert od.device_fleets[0].workload[0].requests_per_year == 182.5
    assert sum(a.count for a in od.assets) == 1000
    assert od.assets[0].stored_on_surrogates == 999

    assert by_name["iptv"].device_fleets[0].workload[0].request.bitrate.to("Mbps") == 10

    social = by_name["social-network"]
    uploads = [w for w in social.device_fleets[0].workload if w.request.direction.value == "tx"]
    assert uploads[0].requests_per_year == 438

    tele = by_name["teleconference"]
    assert len(tele.device_fleets) == 4
    assert tele.server_fleet.provider_relay is False

    sv = by_name["single-video"]
    assert sv.video_case is not None
    labels = {o.label for o in sv.video_case.options}
    assert labels == {"high-effort", "low-effort"}


def test_unknown_builtin():
    with pytest.raises(ScenarioError) as exc:
        builtin_scenario("nope")
    assert exc.value.code == "unresolved-reference"
