import dataclasses

import pytest
from hypothesis import given, strategies as st

from pcoutage import (ConfigError, PowerModel, RadioLinkParams, Scenario, TemperatureSet,
                      ThermalParams, ValidationError, load_scenario, scenario_from_text,
                      scenario_to_text)
from pcoutage.params import DEFAULT_LOGIC_ACTIVITY_PRODUCT
from pcoutage.schedule import calibrate_chip_power

from conftest import scenarios


def test_empty_file_gives_table_defaults(tmp_path):
    cfg = tmp_path / "empty.cfg"
    cfg.write_text("")
    s = load_scenario(cfg)
    assert s.payload_bits == 1e12
    assert s.link.ue_antennas == 4
    assert s.link.bs_antennas == 256
    assert s.link.bandwidth == 1e9
    th = s.thermal
    assert (th.chip_mass, th.chip_specific_heat, th.sink_length, th.sink_area,
            th.plate_thickness) == (2e-3, 1030.0, 2e-3, 1e-4, 1e-3)
    assert (th.sink_conductivity, th.plate_conductivity, th.air_convection_coeff) == \
        (401.0, 130.0, 26.3)
    p = s.power
    assert (p.lna_power, p.lna_efficiency, p.lna_heat_fraction, p.landauer_gap) == \
        (24.3e-3, 0.59, 0.30, 454.2)
    assert p.boltzmann == 1.380649e-23
    assert s.temps.t_safe == pytest.approx(318.15)
    assert s.temps.t_sur0 == pytest.approx(303.15)
    assert s.temps.t_env == pytest.approx(298.15)
    assert s.outage_probability == 1


def test_default_product_is_the_calibrated_value():
    s = Scenario()
    fit = calibrate_chip_power(s.thermal, s.temps, s.link, 1.488e11)
    assert fit.logic_activity_product == pytest.approx(DEFAULT_LOGIC_ACTIVITY_PRODUCT, rel=1e-12)


def test_celsius_key_is_stored_in_kelvin():
    s = scenario_from_text("t_wait_celsius = 44\n")
    assert s.temps.t_wait == pytest.approx(317.15, abs=1e-12)
    s = scenario_from_text("t_wait_kelvin = 316.0  # trailing comment\n")
    assert s.temps.t_wait == 316.0


def test_ue_antennas_zero_is_rejected():
    with pytest.raises(ValidationError) as exc:
        scenario_from_text("ue_antennas = 0")
    assert exc.value.field == "ue_antennas"


@pytest.mark.parametrize("text, fragment", [
    ("payload_bits 1e12", "line 1"),
    ("\n\nbandwidth = fast", "line 3"),
    ("chip_mass = 1\nchip_mass = 2", "line 2"),
    ("colour = 3", "unknown key"),
    ("t_wait_kelvin = 317\nt_wait_celsius = 44", "both"),
    ("t_nowhere_celsius = 44", "unknown temperature"),
])
def test_parse_errors_name_the_line(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        scenario_from_text(text)


@pytest.mark.parametrize("text, field", [
    ("chip_mass = -1", "chip_mass"),
    ("lna_efficiency = 1", "lna_efficiency"),
    ("lna_heat_fraction = 1.5", "lna_heat_fraction"),
    ("landauer_gap = 0.5", "landauer_gap"),
    ("bandwidth = 0", "bandwidth"),
    ("bs_antennas = 2", "bs_antennas"),
    ("snr_per_antenna = 1, 2", "snr_per_antenna"),
    ("snr_per_antenna = 1, 2, -3, 4", "snr_per_antenna"),
    ("t_wait_celsius = 30", "t_wait"),
    ("t_wait_celsius = 29", "t_wait"),
    ("t_wait_celsius = 46", "t_wait"),
    ("payload_bits = 0", "payload_bits"),
    ("outage_probability = 0.5", "outage_probability"),
])
def test_invariant_violations_name_the_field(text, field):
    with pytest.raises(ValidationError) as exc:
        scenario_from_text(text)
    assert exc.value.field == field


def test_snr_db_and_list_are_exclusive():
    with pytest.raises(ValidationError):
        scenario_from_text("snr_db = 3\nsnr_per_antenna = 1, 1, 1, 1")


def test_snr_db_replicates_over_antennas():
    s = scenario_from_text("ue_antennas = 2\nsnr_db = 10")
    assert s.link.snr_per_antenna == pytest.approx((10.0, 10.0))


@pytest.mark.parametrize("factory", [ThermalParams, RadioLinkParams, PowerModel,
                                     TemperatureSet, Scenario])
def test_types_are_immutable(factory):
    obj = factory()
    name = dataclasses.fields(obj)[0].name
    with pytest.raises(dataclasses.FrozenInstanceError):
        setattr(obj, name, 1)


def test_boltzmann_is_not_configurable():
    with pytest.raises(TypeError):
        PowerModel(boltzmann=1.0)


@given(scenarios())
def test_round_trip(s):
    again = scenario_from_text(scenario_to_text(s))
    assert again == s


def test_round_trip_single_antenna():
    s = Scenario(link=RadioLinkParams(8, 1, 2e8, (3.5,)))
    assert scenario_from_text(scenario_to_text(s)) == s


@given(st.floats(-1e3, 1e3, allow_nan=False))
def test_validation_is_total(value):
    # Either a valid object or a ValidationError naming the field; nothing in between.
    try:
        t = ThermalParams(chip_mass=value)
    except ValidationError as exc:
        assert exc.field == "chip_mass"
    else:
        assert t.chip_mass > 0
