"""
Closed form against the ODE oracle
==================================

The simulator integrates the chip heat balance with RK4 and flips the power
whenever the plate crosses a threshold. It never looks at the closed-form
phase durations, so agreement is a real check.
"""

import numpy as np

from pcoutage import Mode, Scenario, build_schedule
from pcoutage.simulate import simulate

rng = np.random.default_rng(7)
for _ in range(5):
    s = (Scenario().with_snr_db(rng.uniform(-13, 15))
         .with_wait(rng.uniform(304.0, 317.5))
         .with_payload(10 ** rng.uniform(10, 12)))
    closed = build_schedule(s, Mode.CEILING)
    _, measured = simulate(s, dt=1e-3, record=False)
    err = (measured.t_total - closed.t_total) / closed.t_total
    print(f"N_W {closed.n_w:4d} / {measured.n_w:4d}   t_total {closed.t_total:9.2f} s   "
          f"rel err {err:+.1e}")

###############################################################################
# Shrinking the step does not shrink the gap: at dt = 1 ms RK4 is already far
# below double-precision roundoff, which is what the residual measures.

s = Scenario()
closed = build_schedule(s).t_total
for dt in (4e-3, 2e-3, 1e-3):
    _, m = simulate(s, dt=dt, record=False)
    print(f"dt {dt:.0e}: |t_total error| = {abs(m.t_total - closed):.3e} s")
