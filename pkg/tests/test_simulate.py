import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from pcoutage import (Mode, Scenario, SimulationError, ValidationError, build_schedule,
                      conduction_path, surface_temperature)
from pcoutage.power import heat_budget
from pcoutage.simulate import (EVENTS_HEADER, TRACE_HEADER, EventKind, TemperatureTrace,
                               events_path, export_trace, integrate_constant_power, simulate)

from conftest import REF


@pytest.fixture(scope="module")
def short_run():
    s = Scenario().with_payload(2e11)
    return s, *simulate(s, 1e-3)


def test_reference_run_matches_closed_form(ref):
    _, measured = simulate(ref, 1e-3, record=False)
    assert measured.n_w == REF["n_w"]
    assert measured.t_total == pytest.approx(REF["t_total"], rel=5e-3)
    assert measured.t_total == pytest.approx(REF["t_total"], rel=1e-8)


def test_small_payload_has_no_outage(ref):
    trace, report = simulate(ref.with_payload(1e10), 1e-3)
    assert report.n_w == 0
    assert not any(e.kind is EventKind.OUTAGE_START for e in trace.events)
    assert trace.events[-1].kind is EventKind.DONE
    assert report.t_total == pytest.approx(1e10 / REF["rate"], abs=1e-8)
    assert trace.t_sur.max() < ref.temps.t_safe


def test_equilibrium_power_gives_flat_trace(ref):
    path = conduction_path(ref.thermal)
    q = heat_budget(ref).p_system
    _, chip, sur = integrate_constant_power(path, q, ref.temps.t_sur0, ref.temps.t_env, 100.0, 1e-2)
    assert len(sur) == 10001
    np.testing.assert_allclose(sur, ref.temps.t_sur0, atol=1e-9)


def test_step_too_coarse(ref):
    with pytest.raises(SimulationError, match="step too coarse"):
        simulate(ref, dt=0.1)
    with pytest.raises(ValidationError):
        simulate(ref, dt=0.0)


def test_event_sequence(short_run):
    s, trace, report = short_run
    kinds = [e.kind for e in trace.events]
    assert kinds == [EventKind.OUTAGE_START, EventKind.OUTAGE_END] * report.n_w + [EventKind.DONE]
    for e in trace.events[:-1]:
        target = s.temps.t_safe if e.kind is EventKind.OUTAGE_START else s.temps.t_wait
        # crossings are bisected to 1e-9 s and the plate moves at most ~2 K/s
        assert e.t_sur == pytest.approx(target, abs=1e-8)
    assert trace.events[-1].bits_delivered == pytest.approx(s.payload_bits, rel=1e-12)


def test_samples_on_grid(short_run):
    _, trace, _ = short_run
    np.testing.assert_allclose(trace.time[:-1], np.arange(len(trace) - 1) * 1e-3, rtol=1e-12)
    assert np.all(np.diff(trace.bits_delivered) >= 0)


def test_energy_bookkeeping_per_phase(short_run):
    s, trace, report = short_run
    path = conduction_path(s.thermal)
    t_env = s.temps.t_env
    y0 = trace.t_chip[0]
    bounds = [(0.0, y0)] + [(e.time, e.t_chip) for e in trace.events]
    for phase, (t0, c0), (t1, c1) in zip(report.phases, bounds, bounds[1:]):
        inside = (trace.time > t0) & (trace.time < t1)
        t = np.concatenate([[t0], trace.time[inside], [t1]])
        c = np.concatenate([[c0], trace.t_chip[inside], [c1]])
        lost = trapezoid(path.z * (c - t_env), t)
        gained = phase.q_total * (t1 - t0)
        stored = path.cm * (c1 - c0)
        assert stored == pytest.approx(gained - lost, rel=1e-3, abs=1e-3 * max(gained, lost))


def test_chip_surface_coupling_and_trajectory(short_run):
    s, trace, report = short_run
    path = conduction_path(s.thermal)
    t_env = s.temps.t_env
    lhs = path.z * (trace.t_chip - t_env)
    np.testing.assert_allclose(lhs, path.hA * (trace.t_sur - t_env), rtol=1e-12)
    # First heating leg against the analytic trajectory.
    first = trace.time <= report.t_first
    analytic = surface_temperature(trace.time[first], report.phases[0].q_total,
                                   s.temps.t_sur0, path, t_env)
    assert np.max(np.abs(trace.t_sur[first] - analytic)) < 1e-3


def test_measured_durations_match_closed_form(short_run):
    s, _, measured = short_run
    closed = build_schedule(s, Mode.CEILING)
    assert measured.n_w == closed.n_w
    for m, c in zip(measured.phases, closed.phases):
        assert m.kind is c.kind
        assert m.duration == pytest.approx(c.duration, abs=2e-3)


def test_export_empty_trace(tmp_path):
    out = tmp_path / "empty.csv"
    paths = export_trace(TemperatureTrace.empty(), out)
    assert paths == (out, events_path(out))
    assert out.read_text() == ",".join(TRACE_HEADER) + "\n"
    assert events_path(out).read_text() == ",".join(EVENTS_HEADER) + "\n"


def test_export_single_sample(tmp_path):
    trace = TemperatureTrace(np.zeros(1), np.full(1, 303.2), np.full(1, 303.15), np.ones(1),
                             np.zeros(1), ())
    out = tmp_path / "one.csv"
    export_trace(trace, out)
    assert len(out.read_text().splitlines()) == 2


def test_export_row_count(ref, tmp_path):
    s = ref.with_payload(2e11)
    trace, report = simulate(s, 1e-2)
    out = tmp_path / "run.csv"
    export_trace(trace, out)
    lines = out.read_text().splitlines()
    assert len(lines) == len(trace) + 1
    assert len(trace) == math.floor(report.t_total / 1e-2) + 2
    values = np.loadtxt(out, delimiter=",", skiprows=1)
    np.testing.assert_array_equal(values[:, 0], trace.time)
    ev = events_path(out).read_text().splitlines()
    assert len(ev) == len(trace.events) + 1 and ev[-1].split(",")[1] == "DONE"


def test_export_unwritable(tmp_path):
    with pytest.raises(OSError):
        export_trace(TemperatureTrace.empty(), tmp_path / "missing" / "x.csv")
