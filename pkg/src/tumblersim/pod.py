"""Underwater life of the detached sensing pod.

Vertical dynamics with quadratic drag and added mass, a flat-bottom clamp for
benthic rest, PVA dissolution gating detachment, and an ideal (optionally
noisy) pressure/temperature sensor with surface-only GPS.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Tuple

import numpy as np

from .buoyancy import BladderState, PodGeometry
from .environment import (FluidProperties, ThermoclineProfile, Vec2,
                          water_pressure, water_temperature)

SENSOR_DEPTH_LIMIT = 300.0       # m, transducer saturates past this
DEFAULT_SENSOR_RATE = 1.0        # Hz
DEFAULT_DISSOLUTION_TIME = 30.0  # s, PVA glue in water
DEFAULT_GPS_ERROR_STD = 2.5      # m, consumer GPS horizontal error


@dataclass(frozen=True)
class HydroParams:
    drag_coefficient: float = 0.8        # bluff-body estimate, no measurement exists
    reference_area: float = 2.5e-3       # m^2, pod frontal area estimate
    dissolution_time: float = DEFAULT_DISSOLUTION_TIME
    added_mass_fraction: float = 0.5     # of displaced water mass

    def __post_init__(self) -> None:
        for name in ("drag_coefficient", "reference_area", "dissolution_time",
                     "added_mass_fraction"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class PodState:
    depth: float = 0.0                   # m, 0 = surface, positive down
    vertical_velocity: float = 0.0       # m/s, positive down
    horizontal_drift: Vec2 = (0.0, 0.0)  # m
    attached: bool = True                # still glued to the tumbler
    bladder: Optional[BladderState] = None
    time: float = 0.0

    def __post_init__(self) -> None:
        if self.depth < 0.0:
            raise ValueError("depth must be non-negative")
        if self.attached and self.depth != 0.0:
            raise ValueError("an attached pod sits at the surface")


@dataclass(frozen=True)
class SensorRecord:
    time: float
    depth: float
    pressure: float        # Pa absolute
    temperature: float     # degC
    phase: str
    saturated: bool = False
    gps_fix: bool = False
    gps_position: Vec2 = (0.0, 0.0)


def net_vertical_force(pod: PodState, geometry: PodGeometry,
                       fluid: FluidProperties = FluidProperties(),
                       hydro: HydroParams = HydroParams()) -> float:
    """Net force on the pod, positive down: weight - buoyancy + drag."""
    dv_fraction = pod.bladder.delta_v_fraction if pod.bladder else 0.0
    displaced = geometry.displacement_volume * (1.0 + dv_fraction)
    weight = geometry.dry_mass * fluid.gravity
    buoyancy = fluid.water_density * fluid.gravity * displaced
    v = pod.vertical_velocity
    drag = 0.5 * fluid.water_density * hydro.drag_coefficient * hydro.reference_area * v * abs(v)
    return weight - buoyancy - drag


def terminal_sink_speed(geometry: PodGeometry, fluid: FluidProperties = FluidProperties(),
                        hydro: HydroParams = HydroParams()) -> float:
    """Closed-form terminal velocity of the deflated sinking pod."""
    excess = (geometry.dry_mass - fluid.water_density * geometry.displacement_volume) * fluid.gravity
    if excess <= 0.0:
        return 0.0
    return math.sqrt(2.0 * excess / (fluid.water_density * hydro.drag_coefficient
                                     * hydro.reference_area))


def detach_check(time_on_surface: float, hydro: HydroParams = HydroParams()) -> bool:
    """True once the PVA joint has been in water long enough to dissolve."""
    if time_on_surface < 0.0:
        raise ValueError("time_on_surface must be non-negative")
    return time_on_surface >= hydro.dissolution_time


def sample_sensors(pod: PodState, fluid: FluidProperties = FluidProperties(),
                   profile: ThermoclineProfile = ThermoclineProfile(),
                   phase: str = "",
                   noise_pressure: float = 0.0, noise_temperature: float = 0.0,
                   gps_error_std: float = DEFAULT_GPS_ERROR_STD,
                   rng: Optional[np.random.Generator] = None) -> SensorRecord:
    """One sensor sample at the pod's current depth.

    The simulated transducer is ideal unless noise standard deviations are
    configured. Past 300 m the record is flagged saturated. GPS fixes exist
    only at the surface, with a configurable horizontal error.
    """
    saturated = pod.depth > SENSOR_DEPTH_LIMIT
    pressure = water_pressure(pod.depth, fluid)
    temperature = water_temperature(pod.depth, profile)
    if rng is not None and noise_pressure > 0.0:
        pressure += noise_pressure * rng.standard_normal()
    if rng is not None and noise_temperature > 0.0:
        temperature += noise_temperature * rng.standard_normal()
    gps_fix = pod.depth == 0.0
    gps_pos = pod.horizontal_drift
    if gps_fix and rng is not None and gps_error_std > 0.0:
        gps_pos = (gps_pos[0] + gps_error_std * rng.standard_normal(),
                   gps_pos[1] + gps_error_std * rng.standard_normal())
    return SensorRecord(time=pod.time, depth=pod.depth, pressure=pressure,
                        temperature=temperature, phase=phase, saturated=saturated,
                        gps_fix=gps_fix, gps_position=gps_pos)


def simulate_underwater(pod: PodState, geometry: PodGeometry, hydro: HydroParams,
                        fluid: FluidProperties, water_depth: float,
                        until: Callable[[PodState, float], bool],
                        dt: float = 0.01,
                        profile: ThermoclineProfile = ThermoclineProfile(),
                        phase: str = "",
                        sensor_rate: float = DEFAULT_SENSOR_RATE,
                        current: Vec2 = (0.0, 0.0),
                        bladder_update: Optional[Callable[[float], BladderState]] = None,
                        max_time: float = 36000.0,
                        noise_pressure: float = 0.0, noise_temperature: float = 0.0,
                        rng: Optional[np.random.Generator] = None,
                        record_initial: bool = True) -> Tuple[PodState, List[SensorRecord]]:
    """March the pod's vertical dynamics until a predicate fires.

    Explicit integration with quadratic drag and added mass; depth clamps to
    the bottom (benthic rest) and the surface. ``until`` receives the state
    and the elapsed time within this call. ``bladder_update``, when given,
    re-equilibrates the bladder against the local ambient pressure each step
    (quasi-static ascent). Sensor records accumulate at ``sensor_rate``.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if water_depth <= 0.0:
        raise ValueError("water_depth must be positive")
    records: List[SensorRecord] = []
    state = pod
    elapsed = 0.0
    sample_every = max(1, round(1.0 / (sensor_rate * dt))) if sensor_rate > 0 else 0
    added = hydro.added_mass_fraction * fluid.water_density * geometry.displacement_volume
    m_eff = geometry.dry_mass + added
    step_count = 0
    if record_initial and sample_every:
        records.append(sample_sensors(state, fluid, profile, phase,
                                      noise_pressure, noise_temperature, rng=rng))
    while not until(state, elapsed) and elapsed < max_time:
        if bladder_update is not None:
            state = replace(state, bladder=bladder_update(state.depth))
        force = net_vertical_force(state, geometry, fluid, hydro)
        v = state.vertical_velocity + force / m_eff * dt
        depth = state.depth + v * dt
        if depth >= water_depth:
            depth, v = water_depth, 0.0
        elif depth <= 0.0:
            depth, v = 0.0, 0.0
        drift = (state.horizontal_drift[0] + current[0] * dt,
                 state.horizontal_drift[1] + current[1] * dt)
        state = PodState(depth=depth, vertical_velocity=v, horizontal_drift=drift,
                         attached=False, bladder=state.bladder, time=state.time + dt)
        elapsed += dt
        step_count += 1
        if sample_every and step_count % sample_every == 0:
            records.append(sample_sensors(state, fluid, profile, phase,
                                          noise_pressure, noise_temperature, rng=rng))
    return state, records
