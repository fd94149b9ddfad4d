"""Chip heat generation in the communication and outage modes.

Baseband power follows the Landauer bound: every logic switch costs
``G * k_B * T_env * ln 2`` joules. The system (housekeeping) power is fixed by
the assumption that the handset starts in thermal equilibrium at ``t_sur0``.
"""

import math
from dataclasses import dataclass

from .errors import ValidationError
from .link import downlink_rate
from .params import BOLTZMANN


@dataclass(frozen=True)
class HeatBudget:
    q_total_comm: float  # W, while receiving
    q_total_outage: float  # W, radio shut off
    p_bb: float
    p_system: float
    q_lna: float
    e_switch: float  # J per switching event


def lna_dissipation(n_lna, lna_power, efficiency):
    return n_lna * lna_power * (1.0 - efficiency)


def landauer_switch_energy(gap, t_env, boltzmann=BOLTZMANN):
    return gap * boltzmann * t_env * math.log(2.0)


def convective_power(h_air, area, t_surface, t_env):
    return h_air * area * (t_surface - t_env)


def lna_heat(link, power):
    """Heat produced by one LNA per receive antenna."""
    return lna_dissipation(link.ue_antennas, power.lna_power, power.lna_efficiency)


def switch_energy(power, t_env):
    return landauer_switch_energy(power.landauer_gap, t_env, power.boltzmann)


def baseband_power(rate, power, t_env):
    """Baseband processing power; linear in the downlink rate."""
    r = float(rate)
    if r < 0:
        raise ValidationError("rate", "must be >= 0")
    return r * power.logic_activity_product * switch_energy(power, t_env)


def system_power(thermal, temps):
    if temps.t_sur0 < temps.t_env:
        raise ValidationError("t_sur0", "initial surface temperature below ambient")
    return convective_power(thermal.air_convection_coeff, thermal.sink_area,
                            temps.t_sur0, temps.t_env)


def heat_budget(scenario):
    """Both heat-generation levels for ``scenario``.

    The outage level drops the LNA contribution along with baseband work:
    with the radio off only housekeeping power remains.
    """
    t_env = scenario.temps.t_env
    rate = downlink_rate(scenario.link)
    p_bb = baseband_power(rate, scenario.power, t_env)
    p_sys = system_power(scenario.thermal, scenario.temps)
    q_lna = lna_heat(scenario.link, scenario.power)
    return HeatBudget(
        q_total_comm=p_bb + p_sys + scenario.power.lna_heat_fraction * q_lna,
        q_total_outage=p_sys,
        p_bb=p_bb,
        p_system=p_sys,
        q_lna=q_lna,
        e_switch=switch_energy(scenario.power, t_env),
    )
