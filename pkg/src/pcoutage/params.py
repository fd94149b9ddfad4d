"""Domain types, physical constants and the flat ``key = value`` config format.

All temperatures are stored in Kelvin. Config files may give any temperature
as ``<name>_kelvin`` or ``<name>_celsius`` (never both).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .errors import ConfigError, ValidationError

BOLTZMANN = 1.380649e-23  # J/K, exact SI value
KELVIN_OFFSET = 273.15

# Calibrated against the 1.488e11-bit single-transmission threshold with every
# other parameter at its default (see schedule.calibrate_chip_power).
DEFAULT_LOGIC_ACTIVITY_PRODUCT = 160590482.9217956


def celsius_to_kelvin(t):
    return t + KELVIN_OFFSET


def kelvin_to_celsius(t):
    return t - KELVIN_OFFSET


def _require(cond, name, message):
    if not cond:
        raise ValidationError(name, message)


def _finite(obj):
    for f in fields(obj):
        value = getattr(obj, f.name)
        values = value if isinstance(value, tuple) else (value,)
        for v in values:
            if isinstance(v, (int, float)) and not math.isfinite(v):
                raise ValidationError(f.name, f"must be finite, got {v!r}")


@dataclass(frozen=True)
class ThermalParams:
    """Heat path chip -> copper sink -> aluminium back plate -> air.

    ``sink_area`` is used both for conduction through the sink and plate and
    for convection from the plate.
    """

    chip_mass: float = 2e-3  # kg
    chip_specific_heat: float = 1030.0  # J/(kg K)
    sink_length: float = 2e-3  # m
    sink_area: float = 1e-4  # m^2
    plate_thickness: float = 1e-3  # m
    sink_conductivity: float = 401.0  # W/(m K), copper
    plate_conductivity: float = 130.0  # W/(m K), 7075-T6 aluminium
    air_convection_coeff: float = 26.3  # W/(m^2 K)

    def __post_init__(self):
        _finite(self)
        for f in fields(self):
            _require(getattr(self, f.name) > 0, f.name, "must be strictly positive")


@dataclass(frozen=True)
class RadioLinkParams:
    """Antenna counts, bandwidth and per-receive-antenna linear SNR."""

    bs_antennas: int = 256
    ue_antennas: int = 4
    bandwidth: float = 1e9  # Hz
    snr_per_antenna: tuple[float, ...] = (10 ** 1.5,) * 4

    def __post_init__(self):
        object.__setattr__(self, "snr_per_antenna", tuple(float(s) for s in self.snr_per_antenna))
        _finite(self)
        for name in ("bs_antennas", "ue_antennas"):
            value = getattr(self, name)
            _require(float(value).is_integer(), name, f"must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        _require(self.ue_antennas >= 1, "ue_antennas", "must be >= 1")
        _require(self.bs_antennas >= self.ue_antennas, "bs_antennas", "must be >= ue_antennas")
        _require(self.bandwidth > 0, "bandwidth", "must be > 0")
        _require(len(self.snr_per_antenna) == self.ue_antennas, "snr_per_antenna",
                 f"needs {self.ue_antennas} entries, got {len(self.snr_per_antenna)}")
        _require(all(s >= 0 for s in self.snr_per_antenna), "snr_per_antenna", "must be >= 0")

    @classmethod
    def uniform(cls, snr_db, bs_antennas=256, ue_antennas=4, bandwidth=1e9):
        """Every receive antenna at the same SNR, given in dB."""
        snr = 10.0 ** (snr_db / 10.0)
        return cls(bs_antennas, ue_antennas, bandwidth, (snr,) * int(ue_antennas))


@dataclass(frozen=True)
class PowerModel:
    """LNA and Landauer-bound baseband power parameters.

    ``logic_activity_product`` is logic operations per bit x fanout x activity
    factor; the three only ever appear multiplied together.
    """

    lna_power: float = 24.3e-3  # W per LNA
    lna_efficiency: float = 0.59
    lna_heat_fraction: float = 0.30
    logic_activity_product: float = DEFAULT_LOGIC_ACTIVITY_PRODUCT
    landauer_gap: float = 454.2
    boltzmann: float = field(default=BOLTZMANN, init=False)

    def __post_init__(self):
        _finite(self)
        _require(self.lna_power >= 0, "lna_power", "must be >= 0")
        _require(0 < self.lna_efficiency < 1, "lna_efficiency", "must lie in (0, 1)")
        _require(0 <= self.lna_heat_fraction <= 1, "lna_heat_fraction", "must lie in [0, 1]")
        _require(self.logic_activity_product > 0, "logic_activity_product", "must be > 0")
        _require(self.landauer_gap >= 1, "landauer_gap", "must be >= 1")


@dataclass(frozen=True)
class TemperatureSet:
    """Ambient, initial, resume and shut-off back-plate temperatures (K)."""

    t_env: float = 298.15
    t_sur0: float = 303.15
    t_safe: float = 318.15
    t_wait: float = 317.15

    def __post_init__(self):
        _finite(self)
        _require(self.t_env > 0, "t_env", "must be > 0 K")
        _require(self.t_env <= self.t_sur0, "t_sur0", "must be >= t_env")
        # t_wait <= t_sur0 would make the cooling phase infinitely long: the
        # outage-mode steady state is exactly t_sur0.
        _require(self.t_sur0 < self.t_wait, "t_wait", "must be > t_sur0")
        _require(self.t_wait < self.t_safe, "t_wait", "must be < t_safe")


@dataclass(frozen=True)
class Scenario:
    thermal: ThermalParams = field(default_factory=ThermalParams)
    link: RadioLinkParams = field(default_factory=RadioLinkParams)
    power: PowerModel = field(default_factory=PowerModel)
    temps: TemperatureSet = field(default_factory=TemperatureSet)
    payload_bits: float = 1e12
    outage_probability: float = 1.0

    def __post_init__(self):
        _require(math.isfinite(self.payload_bits) and self.payload_bits > 0,
                 "payload_bits", "must be finite and > 0")
        _require(self.outage_probability == 1, "outage_probability",
                 "only deterministic outages (probability 1) are modelled")

    def with_payload(self, payload_bits):
        return replace(self, payload_bits=payload_bits)

    def with_wait(self, t_wait):
        return replace(self, temps=replace(self.temps, t_wait=t_wait))

    def with_snr_db(self, snr_db):
        link = self.link
        return replace(self, link=RadioLinkParams.uniform(
            snr_db, link.bs_antennas, link.ue_antennas, link.bandwidth))


def reference_scenario():
    """Default parameter set: 15 dB per antenna, 44 C resume temperature."""
    return Scenario()


# --- config text ----------------------------------------------------------

_SECTIONS = {
    "thermal": ThermalParams,
    "power": PowerModel,
}
_KEY_OWNER = {f.name: section for section, cls in _SECTIONS.items()
              for f in fields(cls) if f.init}
_LINK_KEYS = {"bs_antennas", "ue_antennas", "bandwidth", "snr_per_antenna", "snr_db"}
_TEMP_NAMES = tuple(f.name for f in fields(TemperatureSet))
_SCALAR_KEYS = {"payload_bits", "outage_probability"}


def parse_config(text):
    """Split config text into ``{key: (lineno, raw_line, value)}``.

    Values are floats, or tuples of floats for comma-separated lists.
    """
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(lineno, raw, "expected 'key = value'")
        key, _, value = (part.strip() for part in line.partition("="))
        if not key or not value:
            raise ConfigError(lineno, raw, "empty key or value")
        if key in entries:
            raise ConfigError(lineno, raw, f"duplicate key {key!r}")
        try:
            if "," in value:
                parsed = tuple(float(v) for v in value.split(",") if v.strip())
            else:
                parsed = float(value)
        except ValueError:
            raise ConfigError(lineno, raw, "value is not a number") from None
        entries[key] = (lineno, raw, parsed)
    return entries


def _scalar(entry):
    lineno, raw, value = entry
    if isinstance(value, tuple):
        raise ConfigError(lineno, raw, "expected a single number")
    return value


def scenario_from_text(text):
    """Build a validated :class:`Scenario` from config text."""
    entries = parse_config(text)
    groups = {"thermal": {}, "power": {}, "link": {}, "temps": {}, "scenario": {}}
    for key, entry in entries.items():
        lineno, raw, _ = entry
        if key in _KEY_OWNER:
            groups[_KEY_OWNER[key]][key] = _scalar(entry)
        elif key in _LINK_KEYS:
            groups["link"][key] = entry[2] if key == "snr_per_antenna" else _scalar(entry)
        elif key in _SCALAR_KEYS:
            groups["scenario"][key] = _scalar(entry)
        elif key.endswith(("_kelvin", "_celsius")):
            name, _, unit = key.rpartition("_")
            if name not in _TEMP_NAMES:
                raise ConfigError(lineno, raw, f"unknown temperature {name!r}")
            if name in groups["temps"]:
                raise ConfigError(lineno, raw, f"{name} given in both kelvin and celsius")
            value = _scalar(entry)
            groups["temps"][name] = value if unit == "kelvin" else celsius_to_kelvin(value)
        else:
            raise ConfigError(lineno, raw, f"unknown key {key!r}")

    link_kw = groups["link"]
    if "snr_db" in link_kw and "snr_per_antenna" in link_kw:
        raise ValidationError("snr_db", "give either snr_db or snr_per_antenna, not both")
    defaults = RadioLinkParams()
    bs = link_kw.get("bs_antennas", defaults.bs_antennas)
    ue = link_kw.get("ue_antennas", defaults.ue_antennas)
    bw = link_kw.get("bandwidth", defaults.bandwidth)
    if "snr_per_antenna" in link_kw:
        snr = link_kw["snr_per_antenna"]
        snr = snr if isinstance(snr, tuple) else (snr,)
    else:
        snr_db = link_kw.get("snr_db", 15.0)
        _require(float(ue).is_integer() and ue >= 1, "ue_antennas", "must be an integer >= 1")
        snr = (10.0 ** (snr_db / 10.0),) * int(ue)
    link = RadioLinkParams(bs, ue, bw, snr)

    return Scenario(
        thermal=ThermalParams(**groups["thermal"]),
        link=link,
        power=PowerModel(**groups["power"]),
        temps=TemperatureSet(**groups["temps"]),
        **groups["scenario"],
    )


def load_scenario(path):
    """Read a config file; omitted keys take the default parameter values."""
    text = Path(path).read_text()
    return scenario_from_text(text)


def scenario_to_text(scenario: Scenario) -> str:
    """Serialise every field losslessly (``repr`` floats, kelvin temperatures)."""
    lines = []
    for obj in (scenario.thermal, scenario.power):
        lines += [f"{f.name} = {getattr(obj, f.name)!r}" for f in fields(obj) if f.init]
    link = scenario.link
    lines += [
        f"bs_antennas = {link.bs_antennas}",
        f"ue_antennas = {link.ue_antennas}",
        f"bandwidth = {link.bandwidth!r}",
        "snr_per_antenna = " + ", ".join(repr(s) for s in link.snr_per_antenna)
        + ("," if len(link.snr_per_antenna) == 1 else ""),
    ]
    lines += [f"{name}_kelvin = {getattr(scenario.temps, name)!r}" for name in _TEMP_NAMES]
    lines += [f"payload_bits = {scenario.payload_bits!r}",
              f"outage_probability = {scenario.outage_probability!r}"]
    return "\n".join(lines) + "\n"


def save_scenario(scenario, path):
    Path(path).write_text(scenario_to_text(scenario))
