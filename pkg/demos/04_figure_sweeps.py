"""
Sweeping the design space
=========================

The CSV sweeps behind the usual plots, run in-process on coarse grids.
"""

from pcoutage import Mode, Scenario
from pcoutage.sweeps import HEADERS, SweepSpec, run_sweep

scenario = Scenario()

###############################################################################
# Total time against resume temperature, for a strong and a weak link. The
# exact mode uses the smooth closed form rather than whole bursts.

rows = run_sweep("fig4", scenario, SweepSpec("t_wait", (34.0, 39.0, 44.0)),
                 SweepSpec("snr_db", (-13.0, 15.0)), mode=Mode.EXACT)
print(",".join(HEADERS["fig4"]))
for row in rows:
    print(",".join(row))

###############################################################################
# Average rate as more, shorter outages are allowed. Each step up the
# grid buys less than the one before.

rows = run_sweep("fig6", scenario, SweepSpec("n_w", (10.0, 50.0, 100.0, 150.0)),
                 SweepSpec("snr_db", (15.0,)))
previous = None
for n_w, snr, r_avg, r_dl in rows:
    gain = "" if previous is None else f"  +{(float(r_avg) - previous) / 1e6:.1f} Mbit/s"
    print(f"N_W {n_w:>3}: {float(r_avg) / 1e9:.4f} Gbit/s{gain}")
    previous = float(r_avg)
