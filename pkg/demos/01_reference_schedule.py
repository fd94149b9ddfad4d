"""
Reference outage schedule
=========================

A 1 Tbit download to a 4-antenna handset over a 256-antenna, 1 GHz link.
The back plate may not exceed 45 C, so the radio switches off at t_safe and
back on once the plate has cooled to t_wait.
"""

from pcoutage import Mode, Scenario, build_schedule, heat_budget, kelvin_to_celsius

scenario = Scenario()
budget = heat_budget(scenario)
print(f"heat while receiving  {budget.q_total_comm:.3f} W")
print(f"heat while off        {budget.q_total_outage * 1e3:.2f} mW")

###############################################################################
# The closed-form schedule counts whole restart bursts, so the last one is
# usually shorter than the rest.

report = build_schedule(scenario, Mode.CEILING)
print(f"outages {report.n_w}, total {report.t_total:.1f} s vs ideal {report.t_ideal:.2f} s")
print(f"average rate {report.r_average / 1e9:.3f} Gbit/s of {report.r_downlink / 1e9:.3f}")

for p in report.phases[:4] + report.phases[-2:]:
    print(f"{p.kind.value:14s} {p.duration:9.4f} s  "
          f"{kelvin_to_celsius(p.t_start):6.2f} C -> {kelvin_to_celsius(p.t_end):6.2f} C")

###############################################################################
# Cooling takes about a hundred times longer than the restart burst it buys,
# which is why a 50 s download stretches past an hour.

print(f"gamma = t_outage - t_restart = {report.gamma:.2f} s")
