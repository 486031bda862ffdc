"""Chemical gas generation, bladder compliance, and the resurfacing envelope.

The citric-acid / sodium-bicarbonate reaction delivers CO2 into a silicone
bladder whose pressure-volume behaviour is a monotone cubic through measured
anchors (5.7% at 20 kPa, 30% at 70 kPa). Gas delivery stops once the internal
pressure reaches the reaction back-pressure cap: past that point CO2 stays in
solution instead of outgassing, which is what bounds the operational depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

from scipy.interpolate import PchipInterpolator

from .environment import FluidProperties

GAS_CONSTANT = 8.314           # J/(mol K)
DEFAULT_TEMPERATURE = 293.0    # K

# Molar masses (kg/mol). Sodium citrate is closed against the reaction so
# that mass is conserved bit-exactly: acid + 3 bicarb = citrate + 3 CO2 + 3 H2O.
MOLAR_MASS_CITRIC_ACID = 0.19212
MOLAR_MASS_BICARBONATE = 0.08401
MOLAR_MASS_CO2 = 0.04401
MOLAR_MASS_WATER = 0.018015
MOLAR_MASS_CITRATE = (MOLAR_MASS_CITRIC_ACID + 3.0 * MOLAR_MASS_BICARBONATE
                      - 3.0 * MOLAR_MASS_CO2 - 3.0 * MOLAR_MASS_WATER)

# Internal pressure the reaction can sustain against ambient; absolute Pa.
# Chosen so the measured surface differential (70 kPa) is reproduced exactly.
DEFAULT_REACTION_PRESSURE_CAP = 101325.0 + 70000.0

SMA_AVAILABLE_FORCE = 3.0      # N, measured actuator capability
SMA_REQUIRED_FORCE = 1.0       # N, to breach the sacrificial wall


class LimitingReagent(Enum):
    CITRIC_ACID = "citric_acid"
    BICARBONATE = "bicarbonate"
    NONE = "none"              # no water, or an empty charge


@dataclass(frozen=True)
class ReactantCharge:
    """Reactant masses loaded in the two chambers."""

    citric_acid_mass: float           # kg
    bicarbonate_mass: float           # kg
    water_available: bool = True      # acid must be in solution to react

    def __post_init__(self) -> None:
        if self.citric_acid_mass < 0.0 or self.bicarbonate_mass < 0.0:
            raise ValueError("reactant masses must be non-negative")

    def scaled(self, factor: float) -> "ReactantCharge":
        return ReactantCharge(self.citric_acid_mass * factor,
                              self.bicarbonate_mass * factor,
                              self.water_available)


def stoichiometric_charge(extent_moles: float, water_available: bool = True) -> ReactantCharge:
    """Charge with acid and bicarbonate in exact 1:3 molar proportion."""
    if extent_moles < 0.0:
        raise ValueError("extent must be non-negative")
    return ReactantCharge(extent_moles * MOLAR_MASS_CITRIC_ACID,
                          3.0 * extent_moles * MOLAR_MASS_BICARBONATE,
                          water_available)


@dataclass(frozen=True)
class GasYield:
    co2_moles: float
    product_masses: Dict[str, float]   # kg: sodium_citrate, co2, water, unreacted_*
    limiting: LimitingReagent

    def total_mass(self) -> float:
        return sum(self.product_masses.values())


def gas_from_reactants(charge: ReactantCharge) -> GasYield:
    """Limiting-reagent yield of the acid-base reaction.

    C6H8O7 (aq) + 3 NaHCO3 (s) -> Na3C6H5O7 (aq) + 3 CO2 (g) + 3 H2O (l).
    Without water nothing reacts and the charge is returned unreacted.
    """
    masses = {
        "sodium_citrate": 0.0,
        "co2": 0.0,
        "water": 0.0,
        "unreacted_citric_acid": charge.citric_acid_mass,
        "unreacted_bicarbonate": charge.bicarbonate_mass,
    }
    if not charge.water_available:
        return GasYield(0.0, masses, LimitingReagent.NONE)
    n_acid = charge.citric_acid_mass / MOLAR_MASS_CITRIC_ACID
    n_bicarb = charge.bicarbonate_mass / MOLAR_MASS_BICARBONATE
    extent = min(n_acid, n_bicarb / 3.0)
    if extent <= 0.0:
        return GasYield(0.0, masses, LimitingReagent.NONE)
    limiting = (LimitingReagent.CITRIC_ACID if n_acid <= n_bicarb / 3.0
                else LimitingReagent.BICARBONATE)
    masses["sodium_citrate"] = extent * MOLAR_MASS_CITRATE
    masses["co2"] = 3.0 * extent * MOLAR_MASS_CO2
    masses["water"] = 3.0 * extent * MOLAR_MASS_WATER
    masses["unreacted_citric_acid"] = charge.citric_acid_mass - extent * MOLAR_MASS_CITRIC_ACID
    masses["unreacted_bicarbonate"] = charge.bicarbonate_mass - 3.0 * extent * MOLAR_MASS_BICARBONATE
    return GasYield(3.0 * extent, masses, limiting)


def internal_pressure(gas_moles: float, gas_volume: float, temperature: float,
                      headspace_volume: float,
                      initial_air_pressure: float = 101325.0) -> float:
    """Ideal-gas pressure of the CO2 plus the compressed headspace air.

    The headspace air was sealed at ``initial_air_pressure`` in
    ``headspace_volume`` and follows Boyle's law as the gas space changes.
    """
    if gas_volume <= 0.0 or temperature <= 0.0:
        raise ValueError("gas_volume and temperature must be positive")
    if headspace_volume < 0.0:
        raise ValueError("headspace_volume must be non-negative")
    co2 = gas_moles * GAS_CONSTANT * temperature / gas_volume
    air = initial_air_pressure * headspace_volume / gas_volume
    return co2 + air


class BladderCompliance:
    """Monotone pressure-volume curve of the silicone bladder.

    Anchored at measured (differential pressure, volume fraction) points and
    interpolated with a monotone piecewise cubic; flat beyond the last anchor
    (the membrane could stretch further, but the charge cannot push it).
    """

    def __init__(self, anchors: Sequence[Tuple[float, float]]):
        anchors = [(float(p), float(v)) for p, v in anchors]
        if len(anchors) < 2:
            raise ValueError("compliance needs at least two anchors")
        if anchors[0] != (0.0, 0.0):
            raise ValueError("compliance must start at (0, 0)")
        pressures = [p for p, _ in anchors]
        fractions = [v for _, v in anchors]
        if any(b <= a for a, b in zip(pressures, pressures[1:])) or \
           any(b <= a for a, b in zip(fractions, fractions[1:])):
            raise ValueError("compliance anchors must be strictly increasing")
        if pressures[-1] < 70e3:
            raise ValueError("compliance must be defined at least up to 70 kPa")
        self.anchors = tuple(anchors)
        self._interp = PchipInterpolator(pressures, fractions)
        self.max_pressure = pressures[-1]
        self.max_fraction = fractions[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, BladderCompliance) and self.anchors == other.anchors

    def __hash__(self) -> int:
        return hash(self.anchors)

    def __repr__(self) -> str:
        return f"BladderCompliance({list(self.anchors)!r})"

    @classmethod
    def default(cls) -> "BladderCompliance":
        return cls([(0.0, 0.0), (20e3, 0.057), (70e3, 0.30)])

    def expansion(self, differential_pressure: float) -> float:
        """Volume fraction dV/V0 at a differential pressure (clamped flat)."""
        if differential_pressure < 0.0:
            raise ValueError("differential pressure must be non-negative")
        if differential_pressure >= self.max_pressure:
            return self.max_fraction
        return float(self._interp(differential_pressure))

    def pressure_for_fraction(self, fraction: float) -> float:
        """Inverse of the curve; the differential needed for a target fraction."""
        if fraction < 0.0:
            raise ValueError("fraction must be non-negative")
        if fraction > self.max_fraction:
            raise ValueError(f"fraction {fraction} exceeds the compliance clamp {self.max_fraction}")
        if fraction == 0.0:
            return 0.0
        lo, hi = 0.0, self.max_pressure
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if self.expansion(mid) < fraction:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)


def bladder_expansion(differential_pressure: float,
                      compliance: BladderCompliance) -> float:
    """Volume fraction from the compliance curve."""
    return compliance.expansion(differential_pressure)


@dataclass(frozen=True)
class PodGeometry:
    """Pod mass and volume budget; the pod must sink when deflated."""

    dry_mass: float                 # kg, electronics + structure + reactants
    displacement_volume: float      # m^3, V0 deflated
    headspace_volume: float         # m^3, gas space before inflation
    max_delta_v_fraction: float     # bladder travel limit as dV/V0

    def __post_init__(self) -> None:
        for name in ("dry_mass", "displacement_volume", "headspace_volume",
                     "max_delta_v_fraction"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")

    def float_fraction(self, fluid: FluidProperties) -> float:
        """Minimum dV/V0 for positive buoyancy; negative if it floats deflated."""
        return self.dry_mass / (fluid.water_density * self.displacement_volume) - 1.0


@dataclass(frozen=True)
class BladderState:
    gas_moles: float
    internal_pressure: float       # Pa absolute
    differential_pressure: float   # Pa vs ambient (can be <= 0 when deflated)
    delta_v_fraction: float
    inflated_volume: float         # m^3, V0 * (1 + dV fraction)


def equilibrium_inflation(charge: ReactantCharge, pod: PodGeometry,
                          ambient_pressure: float,
                          temperature: float = DEFAULT_TEMPERATURE,
                          compliance: Optional[BladderCompliance] = None,
                          reaction_pressure_cap: float = DEFAULT_REACTION_PRESSURE_CAP,
                          initial_air_pressure: float = 101325.0) -> BladderState:
    """Inflation fixed point: gas law and compliance curve hold simultaneously.

    Solved by bisection on the expansion volume. If the stoichiometric gas
    would push the internal pressure past the reaction cap, delivery stops at
    the cap and the rest of the CO2 stays dissolved.
    """
    if ambient_pressure <= 0.0:
        raise ValueError("ambient_pressure must be positive")
    compliance = compliance or BladderCompliance.default()
    v0 = pod.displacement_volume
    vh = pod.headspace_volume
    n_stoich = gas_from_reactants(charge).co2_moles
    rt = GAS_CONSTANT * temperature
    invariant = n_stoich * rt + initial_air_pressure * vh   # P * V_gas, isothermal

    def pressure_at(dv: float) -> float:
        return invariant / (vh + dv)

    def deflated() -> BladderState:
        p = pressure_at(0.0)
        return BladderState(gas_moles=n_stoich, internal_pressure=p,
                            differential_pressure=p - ambient_pressure,
                            delta_v_fraction=0.0, inflated_volume=v0)

    # cap-limited branch: the reaction cannot raise pressure past the cap
    cap = min(reaction_pressure_cap, math.inf)
    if cap <= ambient_pressure:
        dv_cap = 0.0
    else:
        dv_cap = min(v0 * compliance.expansion(cap - ambient_pressure),
                     v0 * pod.max_delta_v_fraction)
    if pressure_at(dv_cap) >= cap:
        if dv_cap <= 0.0 and cap <= ambient_pressure:
            # even the cap pressure cannot open the bladder
            state_p = min(pressure_at(0.0), cap)
            return BladderState(gas_moles=_moles_for(state_p, vh, rt, initial_air_pressure, vh),
                                internal_pressure=state_p,
                                differential_pressure=state_p - ambient_pressure,
                                delta_v_fraction=0.0, inflated_volume=v0)
        delivered = _moles_for(cap, vh + dv_cap, rt, initial_air_pressure, vh)
        return BladderState(gas_moles=min(delivered, n_stoich), internal_pressure=cap,
                            differential_pressure=cap - ambient_pressure,
                            delta_v_fraction=dv_cap / v0, inflated_volume=v0 + dv_cap)

    if pressure_at(0.0) <= ambient_pressure:
        return deflated()

    def residual(dv: float) -> float:
        dp = pressure_at(dv) - ambient_pressure
        frac = compliance.expansion(dp) if dp > 0.0 else 0.0
        return dv - v0 * min(frac, pod.max_delta_v_fraction)

    lo, hi = 0.0, v0 * pod.max_delta_v_fraction
    if residual(hi) < 0.0:
        dv = hi   # bladder pinned at its travel limit
    else:
        for _ in range(90):
            mid = 0.5 * (lo + hi)
            if residual(mid) < 0.0:
                lo = mid
            else:
                hi = mid
        dv = 0.5 * (lo + hi)
    p = pressure_at(dv)
    return BladderState(gas_moles=n_stoich, internal_pressure=p,
                        differential_pressure=p - ambient_pressure,
                        delta_v_fraction=dv / v0, inflated_volume=v0 + dv)


def _moles_for(pressure: float, gas_volume: float, rt: float,
               initial_air_pressure: float, headspace_volume: float) -> float:
    """CO2 moles consistent with a total pressure at a gas volume."""
    co2_partial = pressure - initial_air_pressure * headspace_volume / gas_volume
    return max(0.0, co2_partial * gas_volume / rt)


def _floats_at(charge: ReactantCharge, pod: PodGeometry, ambient: float,
               temperature: float, compliance: BladderCompliance,
               cap: float, required: float) -> bool:
    """Whether the equilibrium expansion reaches the float fraction.

    Uses the monotonicity of the fixed-point residual, so no root solve is
    needed: equivalent to equilibrium_inflation(...).delta_v_fraction >= required.
    """
    v0 = pod.displacement_volume
    vh = pod.headspace_volume
    dv_req = required * v0
    if dv_req > pod.max_delta_v_fraction * v0:
        return False
    n = gas_from_reactants(charge).co2_moles
    invariant = n * GAS_CONSTANT * temperature + 101325.0 * vh
    if cap <= ambient:
        return required <= 0.0
    dv_cap = min(v0 * compliance.expansion(cap - ambient),
                 v0 * pod.max_delta_v_fraction)
    if invariant / (vh + dv_cap) >= cap:
        return dv_cap >= dv_req
    p0 = invariant / vh
    if p0 <= ambient:
        return required <= 0.0
    dp = invariant / (vh + dv_req) - ambient
    frac = compliance.expansion(dp) if dp > 0.0 else 0.0
    return dv_req - v0 * min(frac, pod.max_delta_v_fraction) <= 0.0


def max_operational_depth(charge: ReactantCharge, pod: PodGeometry,
                          fluid: FluidProperties = FluidProperties(),
                          temperature: float = DEFAULT_TEMPERATURE,
                          compliance: Optional[BladderCompliance] = None,
                          reaction_pressure_cap: float = DEFAULT_REACTION_PRESSURE_CAP) -> float:
    """Largest depth from which the inflated pod still floats.

    Returns -inf when the charge cannot float the pod even at the surface.
    Raises if the pod floats while deflated (a geometry violation).
    """
    compliance = compliance or BladderCompliance.default()
    required = pod.float_fraction(fluid)
    if required <= 0.0:
        raise ValueError("pod floats even when deflated; dry_mass/(rho*V0) must exceed 1")
    if required > min(compliance.max_fraction, pod.max_delta_v_fraction):
        return -math.inf

    def floats_at(depth: float) -> bool:
        ambient = fluid.atmospheric_pressure + fluid.water_density * fluid.gravity * depth
        return _floats_at(charge, pod, ambient, temperature, compliance,
                          reaction_pressure_cap, required)

    if not floats_at(0.0):
        return -math.inf
    dp_required = compliance.pressure_for_fraction(required)
    hi = (reaction_pressure_cap - fluid.atmospheric_pressure - dp_required) \
        / (fluid.water_density * fluid.gravity) + 1.0
    hi = max(hi, 0.5)
    if floats_at(hi):
        return hi    # envelope saturated by the compliance clamp
    lo = 0.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if floats_at(mid):
            lo = mid
        else:
            hi = mid
    return lo


class InfeasibleDepthError(ValueError):
    """Raised when no charge can float the pod from the requested depth."""

    def __init__(self, target_depth: float, envelope: float):
        self.target_depth = target_depth
        self.envelope = envelope
        super().__init__(
            f"target depth {target_depth:.2f} m exceeds the achievable envelope "
            f"{envelope:.2f} m (reaction pressure cap and compliance clamp)")


def required_charge(target_depth: float, pod: PodGeometry,
                    fluid: FluidProperties = FluidProperties(),
                    temperature: float = DEFAULT_TEMPERATURE,
                    compliance: Optional[BladderCompliance] = None,
                    reaction_pressure_cap: float = DEFAULT_REACTION_PRESSURE_CAP) -> ReactantCharge:
    """Smallest stoichiometric charge that resurfaces from a target depth.

    Bisection on the reaction extent, verified by a forward
    max_operational_depth evaluation. Raises InfeasibleDepthError when the
    envelope cannot reach the target at any charge.
    """
    if target_depth < 0.0:
        raise ValueError("target_depth must be non-negative")
    compliance = compliance or BladderCompliance.default()
    required = pod.float_fraction(fluid)
    if required <= 0.0:
        raise ValueError("pod floats even when deflated; dry_mass/(rho*V0) must exceed 1")
    if required > min(compliance.max_fraction, pod.max_delta_v_fraction):
        raise InfeasibleDepthError(target_depth, -math.inf)
    dp_required = compliance.pressure_for_fraction(required)
    envelope = (reaction_pressure_cap - fluid.atmospheric_pressure - dp_required) \
        / (fluid.water_density * fluid.gravity)
    if target_depth > envelope + 1e-9:
        raise InfeasibleDepthError(target_depth, envelope)

    def deep_enough(extent: float) -> bool:
        depth = max_operational_depth(stoichiometric_charge(extent), pod, fluid,
                                      temperature, compliance, reaction_pressure_cap)
        return depth >= target_depth

    ambient = fluid.atmospheric_pressure + fluid.water_density * fluid.gravity * target_depth
    dv_cap = pod.displacement_volume * compliance.expansion(
        max(0.0, reaction_pressure_cap - ambient))
    rt = GAS_CONSTANT * temperature
    n_hi = (reaction_pressure_cap * (pod.headspace_volume + dv_cap)) / rt
    hi = max(n_hi / 3.0 * 2.0, 1e-9)
    if not deep_enough(hi):
        # cap-saturating charge plus margin must reach the analytic envelope
        hi *= 4.0
        if not deep_enough(hi):
            raise InfeasibleDepthError(target_depth, envelope)
    lo = 0.0
    for _ in range(60):
        mid = 0.5 * (hi + lo)
        if deep_enough(mid):
            hi = mid
        else:
            lo = mid
    charge = stoichiometric_charge(hi)
    achieved = max_operational_depth(charge, pod, fluid, temperature,
                                     compliance, reaction_pressure_cap)
    if achieved + 0.05 < target_depth:
        raise InfeasibleDepthError(target_depth, achieved)
    return charge


def sma_can_breach(required_force: float = SMA_REQUIRED_FORCE,
                   available_force: float = SMA_AVAILABLE_FORCE) -> bool:
    """Force check for the shape-memory-alloy wall breaker."""
    if required_force < 0.0 or available_force < 0.0:
        raise ValueError("forces must be non-negative")
    return available_force >= required_force
