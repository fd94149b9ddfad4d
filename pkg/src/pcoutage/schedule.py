"""Closed-form transmission schedule with thermal outages.

A payload is received in bursts. The first burst heats the back plate from
``t_sur0`` to ``t_safe``; the radio then shuts off until the plate cools to
``t_wait``; every later burst heats it from ``t_wait`` back to ``t_safe``. The
final burst stops early once the payload is complete.

Two ways of counting bursts are offered:

* ``Mode.CEILING`` rounds the number of restarted bursts up and lets the last
  one be partial. This is what a real handset would do for any ``t_wait``.
* ``Mode.EXACT`` requires ``t_wait`` to be tuned (see
  :func:`select_wait_temperature`) so the payload fills a whole number of
  restarted bursts. Only then does the compact gamma/phi expression for the
  total time hold, and it is checked against the direct sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import NumericError, ValidationError
from .link import downlink_rate, ideal_time
from .params import PowerModel
from .power import heat_budget, lna_heat, switch_energy, system_power
from .thermal import conduction_path, phase_duration, steady_surface_temperature, surface_temperature

# Allowed gap, in seconds, between (t_ideal - t_first) and n * t_restart for a
# wait temperature to count as exactly dividing the payload.
EXACT_RESIDUAL_TOL = 1e-9
IDENTITY_RTOL = 1e-9


class Mode(str, Enum):
    CEILING = "ceiling"
    EXACT = "exact"


class PhaseKind(str, Enum):
    FIRST_TRANSMIT = "first_transmit"
    OUTAGE = "outage"
    RESTART = "restart"
    LAST_TRANSMIT = "last_transmit"

    @property
    def transmits(self):
        return self is not PhaseKind.OUTAGE


@dataclass(frozen=True)
class Phase:
    kind: PhaseKind
    duration: float  # s
    t_start: float  # K, back plate
    t_end: float  # K, back plate
    q_total: float  # W
    bits_delivered: float


@dataclass(frozen=True)
class TransmissionReport:
    phases: tuple[Phase, ...]
    n_t: int
    n_w: int
    t_ideal: float
    t_total: float
    r_average: float
    gamma: float  # nan when the plate never reaches t_safe
    phi: float
    mode: Mode
    r_downlink: float
    never_overheats: bool = False
    t_first: float = math.inf
    t_outage: float = math.nan
    t_restart: float = math.inf
    t_last: float = 0.0
    t_total_gamma_phi: float | None = None  # EXACT mode only


@dataclass(frozen=True)
class PhaseTimes:
    """Closed-form phase durations shared by every schedule computation."""

    rate: float
    t_ideal: float
    q_comm: float
    q_outage: float
    t_first: float  # inf if t_safe is never reached
    t_outage: float
    t_restart: float  # inf if t_safe is never reached

    @property
    def never_overheats(self):
        return math.isinf(self.t_first)


def phase_times(scenario):
    temps = scenario.temps
    path = conduction_path(scenario.thermal)
    budget = heat_budget(scenario)
    rate = downlink_rate(scenario.link).value
    t_ideal = ideal_time(scenario.payload_bits, rate)
    t_outage = phase_duration(temps.t_safe, temps.t_wait, budget.q_total_outage, path, temps.t_env)
    if steady_surface_temperature(budget.q_total_comm, path, temps.t_env) <= temps.t_safe:
        t_first = t_restart = math.inf
    else:
        q = budget.q_total_comm
        t_first = phase_duration(temps.t_sur0, temps.t_safe, q, path, temps.t_env)
        t_restart = phase_duration(temps.t_wait, temps.t_safe, q, path, temps.t_env)
    return PhaseTimes(rate, t_ideal, budget.q_total_comm, budget.q_total_outage,
                      t_first, t_outage, t_restart)


def gamma_phi(scenario):
    """``(t_outage - t_restart, t_first - t_restart)`` in seconds.

    Raises:
        UnreachableError: the plate never reaches ``t_safe`` while receiving.
    """
    temps = scenario.temps
    path = conduction_path(scenario.thermal)
    budget = heat_budget(scenario)
    q = budget.q_total_comm
    t_first = phase_duration(temps.t_sur0, temps.t_safe, q, path, temps.t_env)
    t_restart = phase_duration(temps.t_wait, temps.t_safe, q, path, temps.t_env)
    t_outage = phase_duration(temps.t_safe, temps.t_wait, budget.q_total_outage, path, temps.t_env)
    return t_outage - t_restart, t_first - t_restart


def outage_quotient(scenario):
    """Real-valued number of restarted bursts, ``(t_ideal - t_first) / t_restart``.

    Zero when the first burst already carries the whole payload.
    """
    pt = phase_times(scenario)
    if pt.t_first >= pt.t_ideal:
        return 0.0
    return (pt.t_ideal - pt.t_first) / pt.t_restart


def _count(pt, mode):
    if pt.t_first >= pt.t_ideal:
        return 1, 0.0
    span = pt.t_ideal - pt.t_first
    if mode is Mode.EXACT:
        n = round(span / pt.t_restart)
        if n < 1 or abs(span - n * pt.t_restart) > EXACT_RESIDUAL_TOL:
            raise NumericError(
                "wait temperature not calibrated for exact divisibility: "
                f"(t_ideal - t_first) / t_restart = {span / pt.t_restart:.12g}")
        return n + 1, pt.t_restart
    n = math.ceil(span / pt.t_restart)
    t_last = span - (n - 1) * pt.t_restart
    return n + 1, min(max(t_last, 0.0), pt.t_restart)


def transmission_count(scenario, mode=Mode.CEILING):
    """Number of bursts and the duration of the final one.

    Returns:
        tuple: ``(n_t, t_last)``. ``(1, 0.0)`` means the first burst delivers
        everything and no outage occurs.
    """
    return _count(phase_times(scenario), Mode(mode))


def closed_form_total_time(scenario, n_w=None):
    """Total time from the gamma/phi expression.

    ``n_w`` defaults to :func:`outage_quotient`, i.e. the wait temperature is
    assumed to divide the payload exactly even when it does not. This is the
    smooth curve the outage model predicts; :func:`build_schedule` gives the
    realisable, ceiling-rounded value.
    """
    pt = phase_times(scenario)
    if n_w is None:
        n_w = outage_quotient(scenario)
    if n_w == 0:
        return pt.t_ideal
    gamma, phi = gamma_phi(scenario)
    return pt.t_ideal + n_w / (n_w + 1) * (pt.t_ideal - phi) + gamma * n_w


def build_schedule(scenario, mode=Mode.CEILING):
    """Full burst/outage sequence and summary statistics for ``scenario``."""
    mode = Mode(mode)
    temps = scenario.temps
    path = conduction_path(scenario.thermal)
    pt = phase_times(scenario)
    n_t, t_last = _count(pt, mode)
    n_w = n_t - 1
    rate, q_t, q_w = pt.rate, pt.q_comm, pt.q_outage

    if n_w == 0:
        end = surface_temperature(pt.t_ideal, q_t, temps.t_sur0, path, temps.t_env)
        phases = (Phase(PhaseKind.FIRST_TRANSMIT, pt.t_ideal, temps.t_sur0, end, q_t,
                        scenario.payload_bits),)
        t_total = pt.t_ideal
        t_last = 0.0
    else:
        phases = [Phase(PhaseKind.FIRST_TRANSMIT, pt.t_first, temps.t_sur0, temps.t_safe, q_t,
                        rate * pt.t_first)]
        outage = Phase(PhaseKind.OUTAGE, pt.t_outage, temps.t_safe, temps.t_wait, q_w, 0.0)
        restart = Phase(PhaseKind.RESTART, pt.t_restart, temps.t_wait, temps.t_safe, q_t,
                        rate * pt.t_restart)
        for _ in range(n_w - 1):
            phases += [outage, restart]
        end = surface_temperature(t_last, q_t, temps.t_wait, path, temps.t_env)
        phases += [outage, Phase(PhaseKind.LAST_TRANSMIT, t_last, temps.t_wait, end, q_t,
                                 rate * t_last)]
        phases = tuple(phases)
        t_total = pt.t_ideal + n_w * pt.t_outage

    if pt.never_overheats:
        gamma = phi = math.nan
    else:
        gamma, phi = pt.t_outage - pt.t_restart, pt.t_first - pt.t_restart

    t_total_gp = None
    if mode is Mode.EXACT:
        t_total_gp = closed_form_total_time(scenario, n_w)
        if abs(t_total_gp - t_total) > IDENTITY_RTOL * t_total:
            raise NumericError(
                f"total time mismatch: direct sum {t_total!r} vs gamma/phi form {t_total_gp!r}")

    return TransmissionReport(
        phases=phases, n_t=n_t, n_w=n_w, t_ideal=pt.t_ideal, t_total=t_total,
        r_average=scenario.payload_bits / t_total, gamma=gamma, phi=phi, mode=mode,
        r_downlink=rate, never_overheats=pt.never_overheats, t_first=pt.t_first,
        t_outage=pt.t_outage, t_restart=pt.t_restart, t_last=t_last,
        t_total_gamma_phi=t_total_gp,
    )


def select_wait_temperature(scenario, target_n_w):
    """Wait temperature at which the payload needs exactly ``target_n_w`` outages.

    Bisects ``t_wait`` over ``(t_sur0, t_safe)``; the restarted-burst duration
    falls strictly as ``t_wait`` rises, so the root is unique. Bisection runs
    until the bracket is two adjacent floats.

    Raises:
        NumericError: ``target_n_w`` lies outside the attainable range.
    """
    if not target_n_w >= 1:
        raise ValidationError("target_n_w", "must be >= 1")
    temps = scenario.temps
    path = conduction_path(scenario.thermal)
    pt = phase_times(scenario)
    if pt.never_overheats or pt.t_first >= pt.t_ideal:
        raise NumericError("N_W unreachable: the payload completes without any outage")
    span = pt.t_ideal - pt.t_first
    q_min = span / pt.t_first

    def residual(t_wait):
        return span - target_n_w * phase_duration(t_wait, temps.t_safe, pt.q_comm, path,
                                                  temps.t_env)

    lo, hi = temps.t_sur0, temps.t_safe
    f_lo = residual(lo)
    if not f_lo < 0:
        raise NumericError(f"N_W unreachable: attainable range is ({q_min:.6g}, inf), "
                           f"requested {target_n_w}")
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        f_mid = residual(mid)
        if f_mid == 0:
            return mid
        if f_mid < 0:
            lo = mid
        else:
            hi = mid
    best = min((lo, hi), key=lambda t: abs(residual(t)))
    if not temps.t_sur0 < best < temps.t_safe:
        raise NumericError(f"N_W unreachable: no wait temperature inside "
                           f"({temps.t_sur0}, {temps.t_safe}) K")
    return best


class Calibration(NamedTuple):
    q_total_comm: float  # W
    logic_activity_product: float


def calibrate_chip_power(thermal, temps, link, observed_threshold_bits, power=None):
    """Fit the unpublished baseband constants to an observed payload threshold.

    ``observed_threshold_bits`` is the largest payload received in a single
    burst, so the first burst must last exactly ``threshold / R``. Inverting
    the heating curve for that duration gives the receive-mode heat power;
    subtracting the housekeeping and LNA terms leaves the baseband power, from
    which the logic-activity product follows.

    Args:
        power: supplies the LNA parameters and Landauer gap. Its own
            ``logic_activity_product`` is ignored. Defaults to ``PowerModel()``.
    """
    power = PowerModel() if power is None else power
    if not observed_threshold_bits > 0:
        raise ValidationError("observed_threshold_bits", "must be > 0")
    rate = downlink_rate(link).value
    if rate <= 0:
        raise NumericError("link cannot carry payload: downlink rate is 0")
    path = conduction_path(thermal)
    t_first = observed_threshold_bits / rate
    a = path.hA * (temps.t_sur0 - temps.t_env)
    b = path.hA * (temps.t_safe - temps.t_env)
    # (r b - a) / (r - 1) with r = exp(t / tau), rearranged around expm1.
    x = t_first / path.time_constant
    # Past ~700 time constants exp overflows; the fit has collapsed onto b anyway.
    q_comm = b + (b - a) / math.expm1(x) if x < 700 else b
    if not q_comm > b:
        raise NumericError("threshold implies no overheating")
    p_bb = q_comm - system_power(thermal, temps) - power.lna_heat_fraction * lna_heat(link, power)
    if not p_bb > 0:
        raise NumericError(
            f"power model cannot explain threshold: baseband power would be {p_bb:.6g} W")
    product = p_bb / (rate * switch_energy(power, temps.t_env))
    return Calibration(q_comm, product)
