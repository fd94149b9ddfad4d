"""Time-stepping oracle for the outage schedule.

Integrates the chip energy balance ``cm dT/dt = Q - z (T - T_env)`` with
classical RK4 on a fixed grid, switching heat power when the back plate hits
``t_safe`` (radio off) or cools to ``t_wait`` (radio on). Crossings are located
by bisection inside the step and the step is finished with the new power, so
samples stay on the ``k * dt`` grid. Nothing here uses the closed-form phase
durations except the up-front step-size guard.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path

import numpy as np
from numba import njit

from .errors import NumericError, SimulationError, ValidationError
from .link import downlink_rate
from .power import heat_budget
from .schedule import Mode, Phase, PhaseKind, TransmissionReport, phase_times
from .thermal import chip_from_surface, conduction_path, surface_from_chip

TRACE_HEADER = ("time_s", "t_chip_K", "t_sur_K", "q_total_W", "bits_delivered")
EVENTS_HEADER = ("time_s", "kind", "t_chip_K", "t_sur_K", "bits_delivered")
MIN_STEPS_PER_PHASE = 10


class EventKind(IntEnum):
    OUTAGE_START = 0
    OUTAGE_END = 1
    DONE = 2


@dataclass(frozen=True)
class TraceEvent:
    time: float
    kind: EventKind
    t_chip: float
    t_sur: float
    bits_delivered: float


@dataclass(frozen=True)
class TemperatureTrace:
    time: np.ndarray
    t_chip: np.ndarray
    t_sur: np.ndarray
    q_total: np.ndarray
    bits_delivered: np.ndarray
    events: tuple[TraceEvent, ...] = ()

    def __len__(self):
        return len(self.time)

    @classmethod
    def empty(cls):
        e = np.empty(0)
        return cls(e, e, e, e, e, ())


@njit(cache=True)
def _rk4(y, h, q, z, cm, t_env):
    k1 = (q - z * (y - t_env)) / cm
    k2 = (q - z * (y + 0.5 * h * k1 - t_env)) / cm
    k3 = (q - z * (y + 0.5 * h * k2 - t_env)) / cm
    k4 = (q - z * (y + h * k3 - t_env)) / cm
    return y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


@njit(cache=True)
def _locate(y, h, q, z, cm, t_env, ratio, threshold, rising, tol):
    # Smallest sub-step after which the surface is at/past the threshold.
    lo = 0.0
    hi = h
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        sur = t_env + ratio * (_rk4(y, mid, q, z, cm, t_env) - t_env)
        if (rising and sur >= threshold) or (not rising and sur <= threshold):
            hi = mid
        else:
            lo = mid
    return hi


@njit(cache=True)
def _advance(n, y, bits, comm, max_steps, dt, z, cm, ratio, t_env, q_comm, q_out,
             rate, payload, t_safe, t_wait, tol, record,
             s_time, s_chip, s_q, s_bits, e_time, e_kind, e_chip, e_bits):
    n_s = 0
    n_e = 0
    done = False
    steps = 0
    while steps < max_steps and n_e + 3 <= e_time.shape[0]:
        s = n * dt
        t_next = (n + 1) * dt
        while True:
            h = t_next - s
            q = q_comm if comm else q_out
            y1 = _rk4(y, h, q, z, cm, t_env)
            sur1 = t_env + ratio * (y1 - t_env)
            if comm:
                crossed = sur1 >= t_safe
                tc = h
                if crossed:
                    tc = _locate(y, h, q, z, cm, t_env, ratio, t_safe, True, tol)
                remaining = payload - bits
                if rate * h >= remaining:
                    tf = remaining / rate
                    if not crossed or tf <= tc:
                        y = _rk4(y, tf, q, z, cm, t_env)
                        bits = payload
                        s += tf
                        e_time[n_e] = s
                        e_kind[n_e] = 2
                        e_chip[n_e] = y
                        e_bits[n_e] = bits
                        n_e += 1
                        done = True
                        break
                if crossed:
                    y = _rk4(y, tc, q, z, cm, t_env)
                    bits += rate * tc
                    s += tc
                    comm = False
                    e_time[n_e] = s
                    e_kind[n_e] = 0
                    e_chip[n_e] = y
                    e_bits[n_e] = bits
                    n_e += 1
                    continue
                y = y1
                bits += rate * h
                break
            else:
                if sur1 <= t_wait:
                    tc = _locate(y, h, q, z, cm, t_env, ratio, t_wait, False, tol)
                    y = _rk4(y, tc, q, z, cm, t_env)
                    s += tc
                    comm = True
                    e_time[n_e] = s
                    e_kind[n_e] = 1
                    e_chip[n_e] = y
                    e_bits[n_e] = bits
                    n_e += 1
                    continue
                y = y1
                break
        if done:
            if record:
                s_time[n_s] = s
                s_chip[n_s] = y
                s_q[n_s] = q_comm
                s_bits[n_s] = bits
                n_s += 1
            break
        n += 1
        steps += 1
        if record:
            s_time[n_s] = n * dt
            s_chip[n_s] = y
            s_q[n_s] = q_comm if comm else q_out
            s_bits[n_s] = bits
            n_s += 1
    return n, y, bits, comm, done, n_s, n_e


@njit(cache=True)
def _integrate(y, n_steps, dt, q, z, cm, t_env, out):
    out[0] = y
    for i in range(n_steps):
        y = _rk4(y, dt, q, z, cm, t_env)
        out[i + 1] = y


def integrate_constant_power(path, q_total, t_sur_start, t_env, duration, dt):
    """RK4 trajectory at fixed heat power, no switching.

    Returns:
        tuple: ``(time, t_chip, t_sur)`` arrays sampled every ``dt``.
    """
    if not dt > 0:
        raise ValidationError("dt", "must be > 0")
    n_steps = int(math.floor(duration / dt + 1e-9))
    chip = np.empty(n_steps + 1)
    y0 = chip_from_surface(t_sur_start, path, t_env)
    _integrate(y0, n_steps, dt, q_total, path.z, path.cm, t_env, chip)
    time = np.arange(n_steps + 1) * dt
    return time, chip, surface_from_chip(chip, path, t_env)


def _check_step(scenario, dt):
    if not (dt > 0 and math.isfinite(dt)):
        raise ValidationError("dt", "must be a positive finite number of seconds")
    pt = phase_times(scenario)
    if pt.never_overheats or pt.t_first >= pt.t_ideal:
        return
    shortest = min(pt.t_first, pt.t_restart, pt.t_outage)
    if shortest / dt < MIN_STEPS_PER_PHASE:
        raise SimulationError(
            f"step too coarse: dt = {dt:g} s gives fewer than {MIN_STEPS_PER_PHASE} steps "
            f"in a {shortest:.4g} s phase; use dt <= {shortest / MIN_STEPS_PER_PHASE:.3g} s")


def simulate(scenario, dt=1e-3, *, record=True, event_tol=1e-9, chunk_steps=1 << 20):
    """Run the switching ODE until the payload is delivered.

    Args:
        scenario: parameters to simulate.
        dt: fixed RK4 step in seconds.
        record: keep every grid sample. With ``False`` only the first and
            last samples are kept, which is enough for the report.
        event_tol: width, in seconds, to which threshold crossings are bisected.

    Returns:
        tuple: ``(TemperatureTrace, TransmissionReport)``; the report holds
        measured phase durations and counts.
    """
    _check_step(scenario, dt)
    temps = scenario.temps
    path = conduction_path(scenario.thermal)
    budget = heat_budget(scenario)
    rate = downlink_rate(scenario.link).value
    if rate <= 0:
        raise NumericError("link cannot carry payload: downlink rate is 0")
    ratio = path.z / path.hA
    y0 = chip_from_surface(temps.t_sur0, path, temps.t_env)

    cap = chunk_steps + 1 if record else 0
    buf = [np.empty(cap) for _ in range(4)]
    ev = [np.empty(4096), np.empty(4096, dtype=np.int64), np.empty(4096), np.empty(4096)]
    samples = [[np.array([0.0])], [np.array([y0])], [np.array([budget.q_total_comm])],
               [np.array([0.0])]]
    events = [[] for _ in range(4)]

    n, y, bits, comm, done = 0, y0, 0.0, True, False
    while not done:
        n, y, bits, comm, done, n_s, n_e = _advance(
            n, y, bits, comm, chunk_steps, dt, path.z, path.cm, ratio, temps.t_env,
            budget.q_total_comm, budget.q_total_outage, rate, scenario.payload_bits,
            temps.t_safe, temps.t_wait, event_tol, record, *buf, *ev)
        for store, arr in zip(samples, buf):
            store.append(arr[:n_s].copy())
        for store, arr in zip(events, ev):
            store.append(arr[:n_e].copy())

    e_time, e_kind, e_chip, e_bits = (np.concatenate(e) for e in events)
    if not record:
        final = (e_time[-1], y, budget.q_total_comm, bits)
        for store, value in zip(samples, final):
            store.append(np.array([value]))
    s_time, s_chip, s_q, s_bits = (np.concatenate(s) for s in samples)
    e_sur = surface_from_chip(e_chip, path, temps.t_env)
    trace = TemperatureTrace(
        time=s_time, t_chip=s_chip, t_sur=surface_from_chip(s_chip, path, temps.t_env),
        q_total=s_q, bits_delivered=s_bits,
        events=tuple(TraceEvent(float(t), EventKind(int(k)), float(c), float(su), float(b))
                     for t, k, c, su, b in zip(e_time, e_kind, e_chip, e_sur, e_bits)),
    )
    return trace, _measured_report(trace, scenario, rate, budget)


def _measured_report(trace, scenario, rate, budget):
    temps = scenario.temps
    bounds = [(0.0, temps.t_sur0, 0.0)] + [(e.time, e.t_sur, e.bits_delivered)
                                           for e in trace.events]
    n_w = sum(e.kind is EventKind.OUTAGE_START for e in trace.events)
    phases = []
    for i, ((t0, s0, b0), (t1, s1, b1)) in enumerate(zip(bounds, bounds[1:])):
        transmit = i % 2 == 0
        if i == 0:
            kind = PhaseKind.FIRST_TRANSMIT
        elif not transmit:
            kind = PhaseKind.OUTAGE
        elif i == len(bounds) - 2:
            kind = PhaseKind.LAST_TRANSMIT
        else:
            kind = PhaseKind.RESTART
        q = budget.q_total_comm if transmit else budget.q_total_outage
        phases.append(Phase(kind, t1 - t0, s0, s1, q, b1 - b0 if transmit else 0.0))

    def mean(kind):
        d = [p.duration for p in phases if p.kind is kind]
        return float(np.mean(d)) if d else math.nan

    t_first = phases[0].duration if n_w else math.inf
    t_outage, t_restart = mean(PhaseKind.OUTAGE), mean(PhaseKind.RESTART)
    t_total = trace.events[-1].time
    return TransmissionReport(
        phases=tuple(phases), n_t=n_w + 1, n_w=n_w,
        t_ideal=math.fsum(p.duration for p in phases if p.kind.transmits),
        t_total=t_total, r_average=scenario.payload_bits / t_total,
        gamma=t_outage - t_restart, phi=t_first - t_restart, mode=Mode.CEILING,
        r_downlink=rate, never_overheats=False, t_first=t_first, t_outage=t_outage,
        t_restart=t_restart, t_last=phases[-1].duration if n_w else 0.0,
    )


def events_path(path):
    path = Path(path)
    return path.with_name(path.stem + ".events.csv")


def export_trace(trace, path):
    """Write the samples to ``path`` and the events to ``<stem>.events.csv``.

    Returns:
        tuple: the two paths written.
    """
    path = Path(path)
    columns = np.column_stack([trace.time, trace.t_chip, trace.t_sur, trace.q_total,
                               trace.bits_delivered]) if len(trace) else np.empty((0, 5))
    try:
        with open(path, "w", newline="") as fh:
            fh.write(",".join(TRACE_HEADER) + "\n")
            np.savetxt(fh, columns, fmt="%.17g", delimiter=",")
        epath = events_path(path)
        with open(epath, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(EVENTS_HEADER)
            for e in trace.events:
                writer.writerow([repr(e.time), e.kind.name, repr(e.t_chip), repr(e.t_sur),
                                 repr(e.bits_delivered)])
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write trace: {exc.strerror}", str(path)) from exc
    return path, epath
