"""Tumbler geometry, the dimensionless moment of inertia, and fall regimes.

Polygonal sheets are reduced to equal-area discs so the disc-only
inertia number I* = pi * sigma / (64 * rho_air * d) applies; the regime
classifier uses the falling-disc tumbling band I* in [0.04, 0.2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .environment import FluidProperties

CARRIER_RADIUS_LIMIT = 0.20       # m, drone gripper allows a 40 cm diameter
STIFFENER_REQUIRED_DIAMETER = 0.15  # m, unstiffened sheets bend beyond this

TUMBLING_I_STAR_MIN = 0.04
TUMBLING_I_STAR_MAX = 0.20
STEADY_FALL_REYNOLDS = 100.0      # conventional order-of-magnitude viscous cut


class Shape(Enum):
    CIRCLE = "circle"
    SQUARE = "square"
    DODECAGON = "dodecagon"


class FallRegime(Enum):
    STEADY_FALLING = "steady_falling"
    FLUTTERING = "fluttering"
    TUMBLING = "tumbling"
    CHAOTIC = "chaotic"


@dataclass(frozen=True)
class TumblerDesign:
    """A sheet tumbler as built: geometry, layup, masses, release attitude.

    ``characteristic_radius`` is the circumradius for polygons and the radius
    for circles. ``structure_mass`` is the as-built total (sheets plus
    stiffeners); when zero, it is derived from the layup fields instead.
    """

    shape: Shape
    characteristic_radius: float       # m
    sheet_areal_density: float = 0.240  # kg/m^2 per layer (heavy cellulose)
    layer_count: int = 1
    stiffener_mass: float = 0.0        # kg, balsa sticks
    structure_mass: float = 0.0        # kg, overrides layup sum when > 0
    payload_mass: float = 0.0          # kg
    initial_pitch: float = 0.26        # rad, release attitude
    name: str = ""

    def __post_init__(self) -> None:
        if not 0.0 < self.characteristic_radius <= CARRIER_RADIUS_LIMIT:
            raise ValueError(
                f"characteristic_radius must be in (0, {CARRIER_RADIUS_LIMIT}] m "
                f"(carrier limit), got {self.characteristic_radius}")
        if self.sheet_areal_density <= 0.0:
            raise ValueError("sheet_areal_density must be positive")
        if self.layer_count < 1:
            raise ValueError("layer_count must be >= 1")
        for name in ("stiffener_mass", "structure_mass", "payload_mass"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")
        d_eq = 2.0 * math.sqrt(planform_area(self) / math.pi)
        if d_eq >= STIFFENER_REQUIRED_DIAMETER and self.effective_stiffener_mass() <= 0.0:
            raise ValueError(
                f"effective diameter {d_eq:.3f} m >= {STIFFENER_REQUIRED_DIAMETER} m "
                "requires stiffener_mass > 0 (sheet bending limit)")

    def effective_stiffener_mass(self) -> float:
        """Stiffener share of the built mass; residual when structure_mass is given."""
        if self.structure_mass > 0.0:
            return self.structure_mass - self.sheet_mass()
        return self.stiffener_mass

    def sheet_mass(self) -> float:
        return self.layer_count * self.sheet_areal_density * planform_area(self)

    def total_structure_mass(self) -> float:
        if self.structure_mass > 0.0:
            return self.structure_mass
        return self.sheet_mass() + self.stiffener_mass

    def total_mass(self) -> float:
        return self.total_structure_mass() + self.payload_mass


@dataclass(frozen=True)
class EffectiveDisc:
    """Equal-area disc reduction of a design, with its inertia number."""

    equivalent_diameter: float        # m
    effective_areal_density: float    # kg/m^2, total mass over planform area
    i_star: float                     # dimensionless

    def __post_init__(self) -> None:
        for name in ("equivalent_diameter", "effective_areal_density", "i_star"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")

    @property
    def area(self) -> float:
        return math.pi * self.equivalent_diameter ** 2 / 4.0


def planform_area(design: TumblerDesign) -> float:
    """Planform area from the circumradius: pi R^2, 2 R^2, or 3 R^2."""
    r = design.characteristic_radius
    if design.shape is Shape.CIRCLE:
        return math.pi * r * r
    if design.shape is Shape.SQUARE:
        # side = R * sqrt(2)
        return 2.0 * r * r
    # regular dodecagon: (1/2) * 12 * R^2 * sin(2 pi / 12) = 3 R^2
    return 3.0 * r * r


def effective_disc(design: TumblerDesign, fluid: FluidProperties = FluidProperties()) -> EffectiveDisc:
    """Reduce a design to the equal-area disc and evaluate I*.

    I* = pi * sigma_eff / (64 * rho_air * d_eq), with the payload smeared
    uniformly into the areal density. The payload's centre-of-mass offset is
    handled by the aerodynamics module, not here.
    """
    area = planform_area(design)
    if area <= 0.0:
        raise ValueError("design has zero planform area")
    if fluid.air_density <= 0.0:
        raise ValueError("air density must be positive")
    d_eq = 2.0 * math.sqrt(area / math.pi)
    sigma_eff = design.total_mass() / area
    i_star = math.pi * sigma_eff / (64.0 * fluid.air_density * d_eq)
    return EffectiveDisc(equivalent_diameter=d_eq,
                         effective_areal_density=sigma_eff,
                         i_star=i_star)


def reynolds(speed: float, diameter: float, fluid: FluidProperties = FluidProperties()) -> float:
    """Diameter-based Reynolds number in air."""
    if speed < 0.0:
        raise ValueError("speed must be non-negative")
    if diameter <= 0.0:
        raise ValueError("diameter must be positive")
    return speed * diameter / fluid.air_kinematic_viscosity


def classify_regime(i_star: float, re: float) -> FallRegime:
    """Passive fall regime from (I*, Re).

    Below Re = 100 the fall is viscous steady descent; otherwise the plate
    flutters below I* = 0.04, tumbles through I* = 0.2 (both boundaries
    inclusive to tumbling's favour at 0.04), and goes chaotic above.
    """
    if i_star <= 0.0:
        raise ValueError("i_star must be positive")
    if re < 0.0:
        raise ValueError("re must be non-negative")
    if re < STEADY_FALL_REYNOLDS:
        return FallRegime.STEADY_FALLING
    if i_star < TUMBLING_I_STAR_MIN:
        return FallRegime.FLUTTERING
    if i_star <= TUMBLING_I_STAR_MAX:
        return FallRegime.TUMBLING
    return FallRegime.CHAOTIC
