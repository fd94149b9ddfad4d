import math

import pytest
from hypothesis import given

from pcoutage import (PowerModel, RadioLinkParams, Scenario, TemperatureSet, ThermalParams, baseband_power,
                      heat_budget, lna_heat, switch_energy, system_power)
from pcoutage.link import DownlinkRate, downlink_rate
from pcoutage.power import convective_power, landauer_switch_energy, lna_dissipation

from conftest import REF, scenarios


def test_lna_heat_reference():
    assert lna_heat(RadioLinkParams(), PowerModel()) == pytest.approx(39.852e-3, rel=1e-12)


def test_lna_heat_degenerate():
    assert lna_dissipation(4, 24.3e-3, 1.0) == 0.0
    assert lna_dissipation(0, 24.3e-3, 0.59) == 0.0


def test_switch_energy():
    # k_B = 1.380649e-23 J/K exactly.
    assert switch_energy(PowerModel(), 298.15) == pytest.approx(REF["e_switch"], rel=1e-12)
    # the commonly quoted 1.2953e-18 J uses a slightly rounded k_B
    assert switch_energy(PowerModel(), 298.15) == pytest.approx(1.2953e-18, rel=5e-4)
    assert landauer_switch_energy(0.0, 298.15) == 0.0
    assert landauer_switch_energy(1.0, 300.0) == pytest.approx(2.8711e-21, rel=1e-4)


def test_baseband_power():
    power = PowerModel()
    assert baseband_power(DownlinkRate(0.0), power, 298.15) == 0.0
    # calibrated product: P_BB = Q^T - P_system - lambda Q_LNA
    assert baseband_power(DownlinkRate(2.0111e10), power, 298.15) == pytest.approx(4.186, abs=1e-3)
    r = DownlinkRate(1.234e10)
    assert baseband_power(DownlinkRate(2 * r.value), power, 298.15) == \
        2 * baseband_power(r, power, 298.15)


def test_system_power():
    thermal = ThermalParams()
    assert system_power(thermal, TemperatureSet()) == pytest.approx(13.15e-3, rel=1e-12)
    assert system_power(thermal, TemperatureSet(t_sur0=298.15)) == 0.0
    assert convective_power(26.3, 1e-4, 308.15, 298.15) == pytest.approx(26.3e-3, rel=1e-12)


def test_heat_budget_reference(ref):
    b = heat_budget(ref)
    assert b.q_total_comm == pytest.approx(REF["q_comm"], rel=1e-10)
    assert b.q_total_outage == pytest.approx(13.15e-3, rel=1e-12)


def test_heat_budget_without_lna_leak(ref):
    s = Scenario(power=PowerModel(lna_heat_fraction=0.0))
    b = heat_budget(s)
    assert b.q_total_comm == b.p_bb + b.p_system


def test_heat_budget_zero_rate():
    scn = Scenario(link=RadioLinkParams(4, 4, 1e9, (0.0,) * 4))
    b = heat_budget(scn)
    assert b.p_bb == 0.0
    assert b.q_total_comm == b.p_system + 0.3 * b.q_lna


@given(scenarios())
def test_budget_identities(s):
    b = heat_budget(s)
    lam = s.power.lna_heat_fraction
    assert b.q_total_comm >= b.q_total_outage >= 0
    assert math.isclose(b.q_total_comm - b.q_total_outage, b.p_bb + lam * b.q_lna, rel_tol=1e-12)
    assert b.q_total_outage == b.p_system


@given(scenarios())
def test_comm_heat_increases_with_snr(s):
    k = 0
    snrs = list(s.link.snr_per_antenna)
    snrs[k] *= 1.05
    bumped = Scenario(s.thermal, RadioLinkParams(256, 4, 1e9, snrs), s.power, s.temps,
                         s.payload_bits)
    assert heat_budget(bumped).q_total_comm > heat_budget(s).q_total_comm
    assert downlink_rate(bumped.link).value > downlink_rate(s.link).value
