import math

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from pcoutage import Scenario, celsius_to_kelvin

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# Frozen from an independent scipy DOP853 event-location run on the default
# scenario (calibrated power, 15 dB per antenna, t_wait = 44 C).
REF = dict(
    z=2.6291232406071043e-3,
    hA=2.63e-3,
    cm=2.06,
    rate=20111230693.402077,
    e_switch=1.2959572848435393e-18,
    q_comm=4.210622879014358,
    product=160590482.9217963,
    t_first=7.398851033458487,
    t_outage=54.05806508724252,
    t_restart=0.49543631628619755,
    t_ideal=49.7234612463608,
    n_w=86,
    t_total=4698.717058749217,
)


@pytest.fixture
def ref():
    return Scenario()


def scenarios(snr_db=(-13.0, 15.0), payload_exp=(9.0, 12.0), wait_margin=0.5):
    """Valid scenarios over the swept ranges, with t_wait kept off the endpoints."""
    base = Scenario()
    t0, ts = base.temps.t_sur0, base.temps.t_safe
    return st.builds(
        lambda snr, tw, logp: base.with_snr_db(snr).with_wait(tw).with_payload(10.0 ** logp),
        st.floats(*snr_db),
        st.floats(t0 + wait_margin, ts - wait_margin),
        st.floats(*payload_exp),
    )


def kelvin(c):
    return celsius_to_kelvin(c)


def rel(a, b):
    return abs(a - b) / abs(b) if b else abs(a - b)


ACCEPTANCE_LINES = []


def verdict(number, title, ok, detail=""):
    """Record and print one acceptance line; the caller still asserts."""
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
