"""Parameter sweeps behind the four result figures, as CSV rows.

Every grid point is independent. Points are evaluated in order (or through a
process pool when ``jobs > 1``) and rows always come back outer axis first,
inner axis second. A point that cannot be evaluated becomes a row of ``NA``
and a logged warning; the sweep carries on.
"""

from __future__ import annotations

import csv
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .errors import OutageModelError, ValidationError
from .link import downlink_rate
from .params import celsius_to_kelvin
from .schedule import Mode, build_schedule, closed_form_total_time, outage_quotient, \
    select_wait_temperature

log = logging.getLogger(__name__)

AXES = ("payload", "t_wait", "snr_db", "n_w")
NA = "NA"

HEADERS = {
    "fig3": ("omega_bits", "t_wait_C", "duration_s"),
    "fig4": ("t_wait_C", "snr_db", "t_total_s"),
    "fig5": ("snr_db", "t_wait_C", "n_w"),
    "fig6": ("n_w", "snr_db", "r_average_bps", "r_downlink_bps"),
}


@dataclass(frozen=True)
class SweepSpec:
    """One grid axis. Temperatures are in Celsius, payloads in bits."""

    axis: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValidationError("axis", f"must be one of {AXES}, got {self.axis!r}")
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValidationError("values", "sweep grid is empty")
        if any(not math.isfinite(v) for v in values):
            raise ValidationError("values", "sweep grid must be finite")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValidationError("values", "sweep grid must be strictly increasing")
        if self.axis in ("payload", "n_w") and values[0] <= 0:
            raise ValidationError("values", f"{self.axis} grid must be positive")


def grid(axis, start, stop, step):
    """Inclusive arithmetic grid, rounded to suppress float drift."""
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return SweepSpec(axis, tuple(round(start + i * step, 10) for i in range(n)))


FIG3_WAITS_C = (34.0, 37.0, 40.0, 44.0)

DEFAULT_GRIDS = {
    "fig3": (grid("payload", 1e10, 1e12, 1e10), SweepSpec("t_wait", FIG3_WAITS_C)),
    "fig4": (grid("t_wait", 34.0, 44.0, 0.5), grid("snr_db", -13.0, 15.0, 1.0)),
    "fig5": (grid("snr_db", -13.0, 15.0, 1.0), grid("t_wait", 34.0, 44.0, 0.5)),
    "fig6": (grid("n_w", 10.0, 150.0, 10.0), grid("snr_db", -13.0, 15.0, 1.0)),
}


def format_cell(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None or not math.isfinite(value):
        return NA
    return np.format_float_positional(float(value), trim="-")


def total_time(scenario, mode=Mode.CEILING):
    """Ceiling-rounded schedule time, or the smooth closed form in exact mode."""
    if Mode(mode) is Mode.EXACT:
        return closed_form_total_time(scenario)
    return build_schedule(scenario, Mode.CEILING).t_total


def outage_count(scenario, mode=Mode.CEILING):
    if Mode(mode) is Mode.EXACT:
        return outage_quotient(scenario)
    return build_schedule(scenario, Mode.CEILING).n_w


def _guard(label, fn, n_values):
    try:
        return fn()
    except OutageModelError as exc:
        log.warning("%s: %s", label, exc)
        return (NA,) * n_values


def _fig3_point(scenario, mode, point):
    omega, t_wait_c = point
    s = scenario.with_payload(omega)
    if t_wait_c is None:
        return _guard(f"omega={omega:g}", lambda: (s.payload_bits / downlink_rate(s.link).value,), 1)
    return _guard(f"omega={omega:g} t_wait={t_wait_c:g}C",
                  lambda: (total_time(s.with_wait(celsius_to_kelvin(t_wait_c)), mode),), 1)


def _fig4_point(scenario, mode, point):
    t_wait_c, snr = point
    return _guard(f"t_wait={t_wait_c:g}C snr={snr:g}dB", lambda: (total_time(
        scenario.with_snr_db(snr).with_wait(celsius_to_kelvin(t_wait_c)), mode),), 1)


def _fig5_point(scenario, mode, point):
    snr, t_wait_c = point
    return _guard(f"snr={snr:g}dB t_wait={t_wait_c:g}C", lambda: (outage_count(
        scenario.with_snr_db(snr).with_wait(celsius_to_kelvin(t_wait_c)), mode),), 1)


def _fig6_point(scenario, mode, point):
    n_w, snr = point
    s = scenario.with_snr_db(snr)

    def run():
        t_wait = select_wait_temperature(s, int(n_w) if float(n_w).is_integer() else n_w)
        report = build_schedule(s.with_wait(t_wait), Mode.EXACT)
        return report.r_average, report.r_downlink

    return _guard(f"n_w={n_w:g} snr={snr:g}dB", run, 2)


_POINT_FNS = {"fig3": _fig3_point, "fig4": _fig4_point, "fig5": _fig5_point, "fig6": _fig6_point}


def run_sweep(name, scenario, outer=None, inner=None, mode=Mode.CEILING, jobs=1):
    """Evaluate figure sweep ``name`` and return its CSV rows (header excluded).

    Args:
        name: ``fig3`` .. ``fig6``.
        outer, inner: :class:`SweepSpec` overrides for the two grid axes.
        mode: ``ceiling`` reports realisable schedules; ``exact`` reports the
            smooth closed form (fig3/fig4 time, fig5 fractional outage count).
            fig6 always tunes ``t_wait`` for exact divisibility.
        jobs: worker processes; 1 evaluates in-process.
    """
    if name not in HEADERS:
        raise ValidationError("name", f"unknown sweep {name!r}")
    d_outer, d_inner = DEFAULT_GRIDS[name]
    outer = outer or d_outer
    inner = inner or d_inner
    for spec, default in ((outer, d_outer), (inner, d_inner)):
        if spec.axis != default.axis:
            raise ValidationError("axis", f"{name} expects a {default.axis} axis, got {spec.axis}")

    inner_values = ((None,) + inner.values) if name == "fig3" else inner.values
    points = [(o, i) for o in outer.values for i in inner_values]
    fn = partial(_POINT_FNS[name], scenario, Mode(mode))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, points, chunksize=max(1, len(points) // (4 * jobs))))
    else:
        results = [fn(p) for p in points]

    rows = []
    for (o, i), values in zip(points, results):
        if name == "fig3":
            key = (o, "ideal" if i is None else i)
        elif name == "fig6":
            key = (int(o) if o.is_integer() else o, i)
        else:
            key = (o, i)
        rows.append(tuple(format_cell(v) for v in key + tuple(values)))
    return rows


def write_csv(name, rows, out=None):
    """Write header plus rows to ``out`` (a path) or stdout."""
    header = HEADERS[name]
    if out is None:
        _write(sys.stdout, header, rows)
        return
    with open(out, "w", newline="") as fh:
        _write(fh, header, rows)


def _write(fh, header, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
