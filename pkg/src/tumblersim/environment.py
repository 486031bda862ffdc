"""Air and water column properties plus stochastic wind.

Everything here is shared context for the dynamics modules: constant-density
air, a fresh-water column with hydrostatic pressure, a sigmoid thermocline,
and a first-order autoregressive gust model calibrated to the outdoor test
conditions (4-5 m/s mean wind, gusts capped at 7.5 m/s total).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

Vec2 = Tuple[float, float]

STANDARD_ATMOSPHERE_PA = 101325.0
KNOT_IN_MS = 0.5144


@dataclass(frozen=True)
class FluidProperties:
    """Bulk properties of the air and water the system moves through."""

    air_density: float = 1.225            # kg/m^3, sea level
    air_kinematic_viscosity: float = 1.46e-5   # m^2/s
    water_density: float = 1000.0         # kg/m^3, fresh water (lake test site)
    gravity: float = 9.81                 # m/s^2
    atmospheric_pressure: float = STANDARD_ATMOSPHERE_PA  # Pa absolute

    def __post_init__(self) -> None:
        for name in ("air_density", "air_kinematic_viscosity", "water_density",
                     "gravity", "atmospheric_pressure"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.water_density <= self.air_density:
            raise ValueError("water_density must exceed air_density")


@dataclass(frozen=True)
class ThermoclineProfile:
    """Sigmoid temperature profile between surface and bottom water."""

    surface_temp: float = 18.0       # degC
    bottom_temp: float = 8.0         # degC
    thermocline_depth: float = 2.0   # m, sigmoid midpoint
    thermocline_width: float = 0.5   # m, sigmoid scale

    def __post_init__(self) -> None:
        if self.thermocline_width <= 0.0:
            raise ValueError("thermocline_width must be positive")


class WindKind(Enum):
    STILL = "still"
    CONSTANT = "constant"
    GUSTY = "gusty"


@dataclass(frozen=True)
class WindModel:
    """Horizontal wind description; gust state lives in WindSampler."""

    kind: WindKind = WindKind.STILL
    mean_velocity: Vec2 = (0.0, 0.0)   # m/s
    gust_std: float = 1.0              # m/s, stationary std per component
    gust_correlation_time: float = 2.0  # s
    gust_cap: float = 3.0              # m/s over |mean|, hard clamp

    def __post_init__(self) -> None:
        if self.gust_std < 0.0:
            raise ValueError("gust_std must be non-negative")
        if self.kind is WindKind.GUSTY and self.gust_correlation_time <= 0.0:
            raise ValueError("gust_correlation_time must be positive for gusty wind")
        if self.gust_cap < 0.0:
            raise ValueError("gust_cap must be non-negative")

    def sampler(self, seed: int | np.random.Generator | None = 0) -> "WindSampler":
        return WindSampler(self, seed)


class WindSampler:
    """Per-run wind process owner.

    Still and constant winds are deterministic; gusty wind adds an
    exponentially correlated (AR(1) / discrete Ornstein-Uhlenbeck)
    fluctuation per horizontal component with stationary standard deviation
    ``gust_std``, clamped so the sampled magnitude never exceeds
    ``|mean| + gust_cap``. Identical seeds reproduce identical sequences.
    """

    def __init__(self, model: WindModel, seed: int | np.random.Generator | None = 0):
        self.model = model
        self._rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        self._gust = (0.0, 0.0)

    def sample(self, dt: float) -> Vec2:
        if dt <= 0.0:
            raise ValueError("dt must be positive")
        m = self.model
        if m.kind is WindKind.STILL:
            return (0.0, 0.0)
        if m.kind is WindKind.CONSTANT:
            return m.mean_velocity
        phi = math.exp(-dt / m.gust_correlation_time)
        sigma_eps = m.gust_std * math.sqrt(max(0.0, 1.0 - phi * phi))
        gx = phi * self._gust[0] + sigma_eps * self._rng.standard_normal()
        gy = phi * self._gust[1] + sigma_eps * self._rng.standard_normal()
        self._gust = (gx, gy)
        wx = m.mean_velocity[0] + gx
        wy = m.mean_velocity[1] + gy
        mean_mag = math.hypot(m.mean_velocity[0], m.mean_velocity[1])
        limit = mean_mag + m.gust_cap
        mag = math.hypot(wx, wy)
        if mag > limit:
            scale = limit / mag
            wx *= scale
            wy *= scale
        return (wx, wy)


def wind_sample(sampler: WindSampler, dt: float) -> Vec2:
    """One wind draw; mutates the sampler's gust state."""
    return sampler.sample(dt)


def water_pressure(depth: float, fluid: FluidProperties = FluidProperties()) -> float:
    """Absolute hydrostatic pressure at a depth below the surface.

    Affine in depth: atmospheric pressure plus rho_w * g * depth.
    """
    if depth < 0.0:
        raise ValueError("depth must be non-negative")
    return fluid.atmospheric_pressure + fluid.water_density * fluid.gravity * depth


def water_temperature(depth: float, profile: ThermoclineProfile = ThermoclineProfile()) -> float:
    """Water temperature from the sigmoid thermocline.

    T(z) = T_b + (T_s - T_b) / (1 + exp((z - z_tc) / w)); output is always
    bracketed by the surface and bottom temperatures.
    """
    if depth < 0.0:
        raise ValueError("depth must be non-negative")
    arg = (depth - profile.thermocline_depth) / profile.thermocline_width
    # large positive arg drives the sigmoid to the bottom temperature
    if arg > 700.0:
        return profile.bottom_temp
    return profile.bottom_temp + (profile.surface_temp - profile.bottom_temp) / (1.0 + math.exp(arg))
