"""
Calibrating the baseband power
==============================

The switching-activity product of the baseband logic is not something one
can look up. Instead, fix it from an observation: the largest payload that
still finishes in a single burst.
"""

from dataclasses import replace

from pcoutage import Mode, Scenario, build_schedule, calibrate_chip_power, celsius_to_kelvin

scenario = Scenario()
fit = calibrate_chip_power(scenario.thermal, scenario.temps, scenario.link, 1.488e11)
print(f"Q while receiving  {fit.q_total_comm:.4f} W")
print(f"activity product   {fit.logic_activity_product:.6e}")

calibrated = replace(scenario, power=replace(scenario.power,
                                             logic_activity_product=fit.logic_activity_product))

###############################################################################
# Payloads just under the threshold need no outage, just over need one.

for omega in (1.48e11, 1.49e11):
    print(f"{omega:.3e} bits -> {build_schedule(calibrated.with_payload(omega)).n_w} outages")

###############################################################################
# The same parameters predict the total time at each wait temperature. A
# higher resume point means shorter but more frequent outages, and wins.

for t_wait_c in (34, 37, 40, 44):
    r = build_schedule(calibrated.with_wait(celsius_to_kelvin(t_wait_c)), Mode.CEILING)
    print(f"t_wait {t_wait_c} C: {r.n_w:3d} outages, {r.t_total:7.1f} s")
