"""Thermal outage modelling for a high-rate mmWave MIMO downlink to a handset.

A handset that receives faster than it can shed heat must periodically shut
its radio off. This package computes when, how often and at what cost to the
average rate, in closed form, and checks the closed forms against an RK4
simulation of the same heat balance.
"""

from .errors import (ConfigError, NumericError, OutageModelError, SimulationError,
                     UnreachableError, ValidationError)
from .link import DownlinkRate, downlink_rate, ideal_time, snr_db_to_linear
from .params import (PowerModel, RadioLinkParams, Scenario, TemperatureSet, ThermalParams,
                     celsius_to_kelvin, kelvin_to_celsius, load_scenario, reference_scenario,
                     save_scenario, scenario_from_text, scenario_to_text)
from .power import HeatBudget, baseband_power, heat_budget, lna_heat, switch_energy, system_power
from .schedule import (Calibration, Mode, Phase, PhaseKind, TransmissionReport,
                       build_schedule, calibrate_chip_power, closed_form_total_time, gamma_phi,
                       outage_quotient, select_wait_temperature, transmission_count)
from .thermal import (ConductionPath, ThermalState, chip_from_surface, conduction_path,
                      phase_duration, surface_from_chip, surface_temperature)

__version__ = "0.1.0"
