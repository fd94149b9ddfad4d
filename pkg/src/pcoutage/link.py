"""Downlink rate and outage-free transmission time."""

import math
from dataclasses import dataclass

from .errors import NumericError


@dataclass(frozen=True)
class DownlinkRate:
    value: float  # bits/s

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError(f"downlink rate must be >= 0, got {self.value!r}")

    def __float__(self):
        return self.value


def snr_db_to_linear(db):
    return 10.0 ** (db / 10.0)


def downlink_rate(link):
    """Sum of per-antenna Shannon rates, ``B * sum(log2(1 + SNR_k))``.

    The channel is taken as full rank, so each receive antenna carries an
    independent stream.
    """
    total = math.fsum(math.log2(1.0 + snr) for snr in link.snr_per_antenna)
    return DownlinkRate(link.bandwidth * total)


def ideal_time(payload_bits, rate):
    """Seconds needed to move ``payload_bits`` at ``rate`` with no outage."""
    r = float(rate)
    if payload_bits == 0:
        return 0.0
    if r <= 0:
        raise NumericError("link cannot carry payload: downlink rate is 0")
    return payload_bits / r
