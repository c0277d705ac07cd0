import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from streamwatt.units import (
    DATA_RATE,
    DATA_SIZE,
    ENERGY,
    ENERGY_PER_BIT,
    POWER,
    SECONDS_PER_YEAR,
    TIME,
    DimensionError,
    Quantity,
    UnitError,
    parse_quantity,
    quantity,
)


def test_year_is_365_days():
    assert SECONDS_PER_YEAR == 365 * 86400
    assert quantity(1, "year").si == SECONDS_PER_YEAR


def test_decimal_prefixes():
    assert quantity(1, "MByte").si == 8e6
    assert quantity(1, "GByte").si == 8e9
    assert quantity(5, "Mbps").si == 5e6
    assert quantity(1, "kWh").si == 3.6e6
    assert quantity(1, "TWh").to("kWh") == pytest.approx(1e9)


def test_compound_units():
    q = quantity(0.624, "mWh/MByte")
    assert q.dimension == ENERGY_PER_BIT
    # 0.624e-3 Wh per 8e6 bit
    assert q.si == pytest.approx(0.624e-3 * 3600 / 8e6)

    rate = quantity(0.03, "W/Mbps")
    assert rate.dimension == ENERGY_PER_BIT  # W/(bit/s) == J/bit
    assert rate.si == pytest.approx(0.03 / 1e6)


def test_storage_unit_variants():
    a = quantity(0.59, "Wh/MByte/year")
    b = quantity(0.59, "Wh/MByte-yr")
    assert a == b


def test_dimension_checked_addition():
    with pytest.raises(DimensionError):
        quantity(1, "J") + quantity(1, "s")
    total = quantity(1, "Wh") + quantity(3600, "J")
    assert total.to("Wh") == pytest.approx(2.0)


def test_composition():
    e = quantity(100, "W") * quantity(7200, "s")
    assert e.dimension == ENERGY
    assert e.to("Wh") == pytest.approx(200.0)
    b = quantity(5, "Mbps") * quantity(7200, "s")
    assert b.dimension == DATA_SIZE
    assert b.to("GByte") == pytest.approx(4.5)


def test_negative_and_nan_rejected():
    with pytest.raises(ValueError):
        Quantity(-1.0, ENERGY)
    with pytest.raises(ValueError):
        Quantity(float("nan"), ENERGY)
    with pytest.raises(ValueError):
        Quantity(float("inf"), ENERGY)
    with pytest.raises(ValueError):
        quantity(3, "Wh") - quantity(4, "Wh")


def test_immutable():
    q = quantity(1, "J")
    with pytest.raises(AttributeError):
        q.si = 2.0


def test_parse_quantity():
    q = parse_quantity("100 W")
    assert q.dimension == POWER and q.si == 100.0
    assert parse_quantity("5 Mbps").dimension == DATA_RATE
    assert parse_quantity("2 h", expect=TIME).si == 7200.0
    with pytest.raises(UnitError):
        parse_quantity("100")
    with pytest.raises(UnitError):
        parse_quantity("100 furlongs")
    with pytest.raises(DimensionError):
        parse_quantity("5 W", expect=DATA_RATE)


def test_no_prefix_units_not_misparsed():
    # "min" must not parse as milli-"in", "t" not as some prefix combo
    assert parse_quantity("5 min").si == 300.0
    assert parse_quantity("1 t").to("g") == pytest.approx(1e6)


DISPLAY_PAIRS = [
    ("Wh", ENERGY),
    ("kWh", ENERGY),
    ("MWh", ENERGY),
    ("GWh", ENERGY),
    ("W", POWER),
    ("mW", POWER),
    ("Mbps", DATA_RATE),
    ("MByte", DATA_SIZE),
    ("GByte", DATA_SIZE),
    ("h", TIME),
    ("mWh/MByte", ENERGY_PER_BIT),
]


@given(
    value=st.floats(min_value=0, max_value=1e18, allow_nan=False),
    pair=st.sampled_from(DISPLAY_PAIRS),
)
def test_unit_round_trip(value, pair):
    unit, dim = pair
    q = quantity(value, unit)
    assert q.dimension == dim
    back = q.to(unit)
    if value == 0:
        assert back == 0
    else:
        assert math.isclose(back, value, rel_tol=1e-12)
