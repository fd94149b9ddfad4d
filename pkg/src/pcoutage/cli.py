"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 numeric or reachability failure,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import replace

from . import sweeps
from .errors import NumericError, OutageModelError, ValidationError
from .params import Scenario, celsius_to_kelvin, kelvin_to_celsius, load_scenario, save_scenario
from .schedule import Mode, build_schedule, calibrate_chip_power
from .sweeps import SweepSpec, format_cell

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


def _scenario(args):
    return load_scenario(args.config) if args.config else Scenario()


def parse_temperature(text):
    """``44C``, ``317.15K`` or a bare number of kelvin."""
    t = text.strip()
    if t[-1:] in ("C", "c"):
        return celsius_to_kelvin(float(t[:-1]))
    if t[-1:] in ("K", "k"):
        return float(t[:-1])
    return float(t)


def parse_grid(axis, text):
    """``start:stop:step`` (inclusive) or a comma-separated list."""
    if ":" in text:
        start, stop, step = (float(p) for p in text.split(":"))
        return sweeps.grid(axis, start, stop, step)
    return SweepSpec(axis, tuple(float(v) for v in text.split(",") if v.strip()))


_fmt = format_cell


def cmd_schedule(args):
    scenario = _scenario(args)
    report = build_schedule(scenario, Mode(args.mode))
    out = sys.stdout
    print(f"mode          {report.mode.value}", file=out)
    print(f"N_T           {report.n_t}", file=out)
    print(f"N_W           {report.n_w}", file=out)
    print(f"r_downlink    {_fmt(report.r_downlink)} bit/s", file=out)
    print(f"t_ideal       {_fmt(report.t_ideal)} s", file=out)
    print(f"t_total       {_fmt(report.t_total)} s", file=out)
    print(f"r_average     {_fmt(report.r_average)} bit/s", file=out)
    print(f"gamma         {_fmt(report.gamma)} s", file=out)
    print(f"phi           {_fmt(report.phi)} s", file=out)
    if report.never_overheats:
        print("back plate never reaches t_safe: single transmission, no outage", file=out)
    elif report.n_w == 0:
        print("single transmission, no outage", file=out)
    print("", file=out)
    rows = [(i, p.kind.value, _fmt(p.duration), _fmt(kelvin_to_celsius(p.t_start)),
             _fmt(kelvin_to_celsius(p.t_end)), _fmt(p.q_total), _fmt(p.bits_delivered))
            for i, p in enumerate(report.phases)]
    header = ("index", "kind", "duration_s", "t_start_C", "t_end_C", "q_total_W", "bits")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    else:
        shown = rows if len(rows) <= 12 else rows[:5] + [("...",) * 7] + rows[-5:]
        for row in [header] + shown:
            print("  ".join(f"{c!s:>14}" for c in row), file=out)
    return EXIT_OK


def cmd_simulate(args):
    from .simulate import export_trace, simulate

    scenario = _scenario(args)
    closed = build_schedule(scenario, Mode.CEILING)
    trace, measured = simulate(scenario, args.dt, record=bool(args.out))
    if args.out:
        export_trace(trace, args.out)
    rel = (measured.t_total - closed.t_total) / closed.t_total
    print(f"dt                 {args.dt:g} s")
    print(f"N_W closed-form    {closed.n_w}")
    print(f"N_W measured       {measured.n_w}")
    print(f"t_total closed     {_fmt(closed.t_total)} s")
    print(f"t_total measured   {_fmt(measured.t_total)} s")
    print(f"t_total rel error  {rel:.3e}")
    return EXIT_OK


def cmd_sweep(args):
    scenario = _scenario(args)
    name = args.figure
    outer_axis, inner_axis = (spec.axis for spec in sweeps.DEFAULT_GRIDS[name])
    overrides = {"payload": args.payload_grid, "t_wait": args.t_wait_grid,
                 "snr_db": args.snr_grid, "n_w": args.n_w_grid}
    outer = parse_grid(outer_axis, overrides[outer_axis]) if overrides[outer_axis] else None
    inner = parse_grid(inner_axis, overrides[inner_axis]) if overrides[inner_axis] else None
    rows = sweeps.run_sweep(name, scenario, outer, inner, Mode(args.mode), args.jobs)
    sweeps.write_csv(name, rows, args.out)
    return EXIT_OK


def cmd_calibrate(args):
    scenario = _scenario(args)
    fit = calibrate_chip_power(scenario.thermal, scenario.temps, scenario.link,
                               args.threshold_bits, scenario.power)
    calibrated = replace(scenario, power=replace(
        scenario.power, logic_activity_product=fit.logic_activity_product))
    print(f"threshold_bits          {_fmt(args.threshold_bits)}")
    print(f"q_total_comm_W          {fit.q_total_comm!r}")
    print(f"logic_activity_product  {fit.logic_activity_product!r}")
    if args.target_ttotal is not None:
        t_wait = parse_temperature(args.target_twait) if args.target_twait else \
            calibrated.temps.t_wait
        report = build_schedule(calibrated.with_wait(t_wait), Mode(args.mode))
        residual = report.t_total - args.target_ttotal
        print(f"target t_wait_C         {_fmt(kelvin_to_celsius(t_wait))}")
        print(f"predicted t_total_s     {_fmt(report.t_total)}")
        print(f"target t_total_s        {_fmt(args.target_ttotal)}")
        print(f"residual_s              {_fmt(residual)}")
        print(f"residual_rel            {residual / args.target_ttotal:.6g}")
    if args.out:
        save_scenario(calibrated, args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pcoutage",
        description="Thermal (power-consumption) outage scheduling for a high-rate downlink.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mode=True):
        p.add_argument("--config", help="key = value scenario file (defaults if omitted)")
        p.add_argument("--out", help="output path")
        if mode:
            p.add_argument("--mode", choices=[m.value for m in Mode], default="ceiling")

    p = sub.add_parser("schedule", help="closed-form schedule for one scenario")
    common(p)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("simulate", help="run the time-stepping oracle")
    common(p, mode=False)
    p.add_argument("--dt", type=float, default=1e-3, help="RK4 step in seconds")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="figure reproduction sweeps as CSV")
    p.add_argument("figure", choices=sorted(sweeps.HEADERS))
    common(p)
    p.add_argument("--payload-grid", help="bits, start:stop:step or a,b,c")
    p.add_argument("--t-wait-grid", help="Celsius, start:stop:step or a,b,c")
    p.add_argument("--snr-grid", help="dB, start:stop:step or a,b,c")
    p.add_argument("--n-w-grid", help="outage counts, start:stop:step or a,b,c")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("calibrate", help="fit baseband power to a single-burst threshold")
    common(p)
    p.add_argument("--threshold-bits", type=float, required=True)
    p.add_argument("--target-ttotal", type=float, help="observed total time, s")
    p.add_argument("--target-twait", help="wait temperature of that observation, e.g. 44C")
    p.set_defaults(func=cmd_calibrate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, OutageModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
