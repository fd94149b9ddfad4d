"""Lumped-capacitance thermal model of the handset.

The chip is a single heat capacity ``cm`` drained to ambient through a series
path (sink conduction, plate conduction, air convection) with overall
coefficient ``z``. Conduction is treated as steady, which fixes the back-plate
temperature as an affine function of chip temperature; both therefore relax
exponentially with time constant ``cm / z``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnreachableError, ValidationError


@dataclass(frozen=True)
class ConductionPath:
    z: float  # W/K, chip to ambient
    cm: float  # J/K
    hA: float  # W/K, plate to ambient

    def __post_init__(self):
        if not 0 < self.z <= self.hA * (1 + 1e-12):
            raise ValidationError("z", "series coefficient must satisfy 0 < z <= hA")
        if not self.cm > 0:
            raise ValidationError("cm", "heat capacity must be > 0")

    @property
    def time_constant(self):
        return self.cm / self.z


@dataclass(frozen=True)
class ThermalState:
    t_chip: float
    t_sur: float


def series_coefficient(sink_length, plate_thickness, area, k_sink, k_plate, h_air):
    """Inverse of the summed sink, plate and convection resistances (W/K)."""
    resistance = (sink_length / (k_sink * area)
                  + plate_thickness / (k_plate * area)
                  + 1.0 / (h_air * area))
    return 1.0 / resistance


def conduction_path(thermal):
    z = series_coefficient(thermal.sink_length, thermal.plate_thickness, thermal.sink_area,
                           thermal.sink_conductivity, thermal.plate_conductivity,
                           thermal.air_convection_coeff)
    return ConductionPath(
        z=z,
        cm=thermal.chip_specific_heat * thermal.chip_mass,
        hA=thermal.air_convection_coeff * thermal.sink_area,
    )


def steady_surface_temperature(q_total, path, t_env):
    return q_total / path.hA + t_env


def surface_temperature(t, q_total, t_start, path, t_env):
    """Back-plate temperature ``t`` seconds after a phase starts at ``t_start``.

    Works elementwise on arrays of ``t``.
    """
    x = -path.z * np.asarray(t, dtype=float) / path.cm
    out = (q_total / path.hA) * -np.expm1(x) + (t_start - t_env) * np.exp(x) + t_env
    return out if np.ndim(out) else float(out)


def chip_from_surface(t_sur, path, t_env):
    return (path.hA / path.z) * (t_sur - t_env) + t_env


def surface_from_chip(t_chip, path, t_env):
    return (path.z / path.hA) * (t_chip - t_env) + t_env


def thermal_state(t_sur, path, t_env):
    return ThermalState(t_chip=chip_from_surface(t_sur, path, t_env), t_sur=t_sur)


def phase_duration(t_start, t_target, q_total, path, t_env):
    """Time for the back plate to move from ``t_start`` to ``t_target`` at constant power.

    Raises:
        UnreachableError: ``t_target`` is not strictly between ``t_start`` and
            the steady state ``q_total / hA + t_env``.
    """
    if t_target == t_start:
        return 0.0
    steady = steady_surface_temperature(q_total, path, t_env)
    heating = t_target > t_start
    if (heating and not steady > t_target) or (not heating and not steady < t_target):
        raise UnreachableError(
            f"target temperature unreachable: {t_start:.6g} K -> {t_target:.6g} K", steady)
    # ln(num/den) with num - den = hA (t_target - t_start); log1p keeps short
    # phases accurate.
    den = q_total - path.hA * (t_target - t_env)
    return path.time_constant * math.log1p(path.hA * (t_target - t_start) / den)
