"""YAML mission configuration: parsing, validation, emission.

Documents are strict by default: unknown keys are rejected with their full
path (a lax mode downgrades them to warnings). All quantities are SI. A
``preset`` key pulls one of the shipped designs and its calibrated
coefficients; explicit sections override preset fields.
"""

from __future__ import annotations

import math
from typing import Any, Dict, List, Optional, Tuple

import yaml

from . import presets
from .aerodynamics import AeroCoefficients, DEFAULT_MODEL, PlateModelParams
from .buoyancy import (BladderCompliance, DEFAULT_REACTION_PRESSURE_CAP,
                       DEFAULT_TEMPERATURE, PodGeometry, ReactantCharge,
                       stoichiometric_charge)
from .environment import (KNOT_IN_MS, FluidProperties, ThermoclineProfile,
                          WindKind, WindModel)
from .mission import MissionConfig, TriggerConfig, TriggerMode
from .pod import HydroParams
from .tumbler import Shape, TumblerDesign


class ConfigError(ValueError):
    """Configuration rejected; the message carries the offending key path."""


_WIND_KEYS = {"kind", "mean", "mean_knots", "gust_std", "gust_correlation_time",
              "gust_cap"}
_FLUID_KEYS = {"air_density", "air_kinematic_viscosity", "water_density",
               "gravity", "atmospheric_pressure"}
_THERMO_KEYS = {"surface_temp", "bottom_temp", "thermocline_depth", "thermocline_width"}
_ENV_KEYS = {"wind", "water_depth", "thermocline", "fluid"}
_DESIGN_KEYS = {"shape", "characteristic_radius", "sheet_areal_density",
                "layer_count", "stiffener_mass", "structure_mass",
                "payload_mass", "initial_pitch"}
_COEFF_KEYS = {"c_translational_lift", "c_rotational_lift", "c_drag_edgewise",
               "c_drag_broadside", "c_rotational_damping", "c_lateral_drift"}
_MODEL_KEYS = {"cp_arm_fraction", "inertia_factor", "payload_arm_fraction",
               "payload_spin_drag", "cg_moment_coupling", "payload_cap"}
_AERO_KEYS = {"coefficients", "model"}
_POD_KEYS = {"dry_mass", "displacement_volume", "headspace_volume", "max_delta_v_fraction"}
_CHARGE_KEYS = {"citric_acid_mass", "bicarbonate_mass", "water_available", "extent_moles"}
_BUOY_KEYS = {"reaction_pressure_cap", "temperature", "reaction_delay",
              "compliance_anchors"}
_HYDRO_KEYS = {"drag_coefficient", "reference_area", "dissolution_time",
               "added_mass_fraction"}
_TRIGGER_KEYS = {"mode", "max_benthic_time", "depth_limit"}
_MISSION_KEYS = {"preflight_duration", "transit_duration", "drift_factor",
                 "retrieval_timeout", "shoreline_distance",
                 "sma_required_force", "sma_available_force"}
_SAMPLING_KEYS = {"output_interval", "sensor_rate", "underwater_dt", "aerial_timeout"}
_BATCH_KEYS = {"runs", "pitch_band_deg", "grid_points"}
_TOP_KEYS = {"preset", "design", "environment", "release_height", "aero", "pod",
             "charge", "buoyancy", "hydro", "trigger", "mission", "sampling",
             "batch", "seed"}


def parse_config(text: str, lax: bool = False) -> Tuple[MissionConfig, Dict[str, Any], List[str]]:
    """Parse a YAML document into a validated MissionConfig.

    Returns (config, batch_options, warnings). Raises ConfigError with the
    line number on malformed YAML and with the key path on semantic errors.
    """
    warnings: List[str] = []
    try:
        doc = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        line = mark.line + 1 if mark else "?"
        raise ConfigError(f"YAML syntax error at line {line}: {exc.problem}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"YAML syntax error: {exc}") from exc
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigError("top level of the config must be a mapping")
    return build_config(doc, lax=lax, warnings=warnings)


def build_config(doc: Dict[str, Any], lax: bool = False,
                 warnings: Optional[List[str]] = None) -> Tuple[MissionConfig, Dict[str, Any], List[str]]:
    """Build a MissionConfig from an already-parsed mapping."""
    warnings = warnings if warnings is not None else []
    _check_keys(doc, _TOP_KEYS, "", lax, warnings)

    preset_name = doc.get("preset", "dodecagon3")
    if preset_name is not None and preset_name not in presets.DESIGNS:
        raise ConfigError(f"preset: unknown design preset {preset_name!r}; "
                          f"available: {', '.join(sorted(presets.DESIGNS))}")

    design_doc = dict(doc.get("design") or {})
    _check_keys(design_doc, _DESIGN_KEYS, "design.", lax, warnings)
    if preset_name is not None:
        base = presets.DESIGNS[preset_name]
        kwargs = {f: getattr(base, f) for f in
                  ("shape", "characteristic_radius", "sheet_areal_density",
                   "layer_count", "stiffener_mass", "structure_mass",
                   "payload_mass", "initial_pitch", "name")}
        kwargs["payload_mass"] = presets.PAYLOAD_ELECTRONICS
    else:
        if "shape" not in design_doc or "characteristic_radius" not in design_doc:
            raise ConfigError("design: shape and characteristic_radius are required "
                              "when no preset is named")
        kwargs = {}
    for key, value in design_doc.items():
        if key == "shape":
            kwargs["shape"] = _parse_enum(Shape, value, "design.shape")
        elif key == "layer_count":
            kwargs["layer_count"] = _integer(value, "design.layer_count")
        else:
            kwargs[key] = _number(value, f"design.{key}")
    try:
        design = TumblerDesign(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"design: {exc}") from exc

    env_doc = dict(doc.get("environment") or {})
    _check_keys(env_doc, _ENV_KEYS, "environment.", lax, warnings)
    fluid = _build(FluidProperties, env_doc.get("fluid"), _FLUID_KEYS, "environment.fluid")
    thermocline = _build(ThermoclineProfile, env_doc.get("thermocline"), _THERMO_KEYS,
                         "environment.thermocline")
    wind = _build_wind(env_doc.get("wind"), lax, warnings)
    water_depth = _number(env_doc.get("water_depth", 3.0), "environment.water_depth")

    aero_doc = dict(doc.get("aero") or {})
    _check_keys(aero_doc, _AERO_KEYS, "aero.", lax, warnings)
    if aero_doc.get("coefficients") is not None:
        coeffs = _build(AeroCoefficients, aero_doc["coefficients"], _COEFF_KEYS,
                        "aero.coefficients")
    elif preset_name is not None:
        coeffs = presets.COEFFICIENTS[preset_name]
    else:
        raise ConfigError("aero.coefficients: required when no preset is named")
    model_doc = aero_doc.get("model")
    model = _build(PlateModelParams, model_doc, _MODEL_KEYS, "aero.model") \
        if model_doc is not None else DEFAULT_MODEL

    pod_doc = doc.get("pod")
    pod = _build(PodGeometry, pod_doc, _POD_KEYS, "pod") if pod_doc is not None \
        else presets.REFERENCE_POD

    charge_doc = doc.get("charge")
    if charge_doc is None:
        charge = presets.REFERENCE_CHARGE
    else:
        _check_keys(charge_doc, _CHARGE_KEYS, "charge.", lax, warnings)
        if "extent_moles" in charge_doc:
            extra = set(charge_doc) - {"extent_moles", "water_available"}
            if extra:
                raise ConfigError("charge: extent_moles excludes explicit masses "
                                  f"({', '.join(sorted(extra))})")
            try:
                charge = stoichiometric_charge(_number(charge_doc["extent_moles"],
                                                       "charge.extent_moles"),
                                               bool(charge_doc.get("water_available", True)))
            except ValueError as exc:
                raise ConfigError(f"charge: {exc}") from exc
        else:
            charge = _build(ReactantCharge, charge_doc,
                            _CHARGE_KEYS - {"extent_moles"}, "charge")

    buoy_doc = dict(doc.get("buoyancy") or {})
    _check_keys(buoy_doc, _BUOY_KEYS, "buoyancy.", lax, warnings)
    compliance = None
    if "compliance_anchors" in buoy_doc:
        try:
            compliance = BladderCompliance(buoy_doc["compliance_anchors"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"buoyancy.compliance_anchors: {exc}") from exc

    hydro_doc = doc.get("hydro")
    hydro = _build(HydroParams, hydro_doc, _HYDRO_KEYS, "hydro") \
        if hydro_doc is not None else HydroParams()

    trig_doc = dict(doc.get("trigger") or {})
    _check_keys(trig_doc, _TRIGGER_KEYS, "trigger.", lax, warnings)
    try:
        trigger = TriggerConfig(
            mode=_parse_enum(TriggerMode, trig_doc.get("mode", "either"), "trigger.mode"),
            max_benthic_time=_number(trig_doc.get("max_benthic_time", 600.0),
                                     "trigger.max_benthic_time"),
            depth_limit=_number(trig_doc.get("depth_limit", 10.0), "trigger.depth_limit"))
    except ValueError as exc:
        raise ConfigError(f"trigger: {exc}") from exc

    mission_doc = dict(doc.get("mission") or {})
    _check_keys(mission_doc, _MISSION_KEYS, "mission.", lax, warnings)
    sampling_doc = dict(doc.get("sampling") or {})
    _check_keys(sampling_doc, _SAMPLING_KEYS, "sampling.", lax, warnings)
    batch_doc = dict(doc.get("batch") or {})
    _check_keys(batch_doc, _BATCH_KEYS, "batch.", lax, warnings)
    batch = {
        "runs": _integer(batch_doc.get("runs", 5), "batch.runs"),
        "pitch_band": math.radians(_number(batch_doc.get("pitch_band_deg", 10.0),
                                           "batch.pitch_band_deg")),
        "grid_points": _integer(batch_doc.get("grid_points", 61), "batch.grid_points"),
    }

    try:
        cfg = MissionConfig(
            design=design, coefficients=coeffs, pod=pod, charge=charge,
            fluid=fluid, wind=wind, thermocline=thermocline, hydro=hydro,
            trigger=trigger, model=model,
            release_height=_number(doc.get("release_height", 15.0), "release_height"),
            water_depth=water_depth,
            seed=_integer(doc.get("seed", 0), "seed"),
            preflight_duration=_number(mission_doc.get("preflight_duration", 0.0),
                                       "mission.preflight_duration"),
            transit_duration=_number(mission_doc.get("transit_duration", 0.0),
                                     "mission.transit_duration"),
            reaction_delay=_number(buoy_doc.get("reaction_delay", 60.0),
                                   "buoyancy.reaction_delay"),
            temperature=_number(buoy_doc.get("temperature", DEFAULT_TEMPERATURE),
                                "buoyancy.temperature"),
            reaction_pressure_cap=_number(
                buoy_doc.get("reaction_pressure_cap", DEFAULT_REACTION_PRESSURE_CAP),
                "buoyancy.reaction_pressure_cap"),
            compliance=compliance,
            drift_factor=_number(mission_doc.get("drift_factor", 0.03),
                                 "mission.drift_factor"),
            retrieval_timeout=_number(mission_doc.get("retrieval_timeout", 600.0),
                                      "mission.retrieval_timeout"),
            shoreline_distance=_number(mission_doc.get("shoreline_distance", 200.0),
                                       "mission.shoreline_distance"),
            sma_required_force=_number(mission_doc.get("sma_required_force", 1.0),
                                       "mission.sma_required_force"),
            sma_available_force=_number(mission_doc.get("sma_available_force", 3.0),
                                        "mission.sma_available_force"),
            output_interval=_number(sampling_doc.get("output_interval", 0.01),
                                    "sampling.output_interval"),
            sensor_rate=_number(sampling_doc.get("sensor_rate", 1.0),
                                "sampling.sensor_rate"),
            underwater_dt=_number(sampling_doc.get("underwater_dt", 0.01),
                                  "sampling.underwater_dt"),
            aerial_timeout=_number(sampling_doc.get("aerial_timeout", 120.0),
                                   "sampling.aerial_timeout"),
            preset_name=preset_name or "",
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg, batch, warnings


def _check_keys(doc: Dict[str, Any], allowed: set, prefix: str,
                lax: bool, warnings: List[str]) -> None:
    if not isinstance(doc, dict):
        raise ConfigError(f"{prefix or 'top level'} must be a mapping")
    unknown = set(doc) - allowed
    if unknown:
        paths = ", ".join(sorted(prefix + k for k in unknown))
        if lax:
            warnings.append(f"ignoring unknown keys: {paths}")
            for k in unknown:
                doc.pop(k)
        else:
            raise ConfigError(f"unknown keys: {paths}")


def _build(cls, doc: Optional[Dict[str, Any]], allowed: set, path: str):
    doc = dict(doc or {})
    _check_keys(doc, allowed, path + ".", False, [])
    kwargs = {}
    for key, value in doc.items():
        if isinstance(value, bool):
            kwargs[key] = value
        elif key == "layer_count":
            kwargs[key] = _integer(value, f"{path}.{key}")
        else:
            kwargs[key] = _number(value, f"{path}.{key}")
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _build_wind(doc: Optional[Dict[str, Any]], lax: bool, warnings: List[str]) -> WindModel:
    if doc is None:
        return WindModel()
    doc = dict(doc)
    _check_keys(doc, _WIND_KEYS, "environment.wind.", lax, warnings)
    kind = _parse_enum(WindKind, doc.get("kind", "still"), "environment.wind.kind")
    if "mean_knots" in doc:
        if "mean" in doc:
            raise ConfigError("environment.wind: give mean or mean_knots, not both")
        knots = doc["mean_knots"]
        if not (isinstance(knots, (list, tuple)) and len(knots) == 2):
            raise ConfigError("environment.wind.mean_knots must be a 2-element list")
        mean = [_number(knots[0], "environment.wind.mean_knots[0]") * KNOT_IN_MS,
                _number(knots[1], "environment.wind.mean_knots[1]") * KNOT_IN_MS]
    else:
        mean = doc.get("mean", [0.0, 0.0])
    if not (isinstance(mean, (list, tuple)) and len(mean) == 2):
        raise ConfigError("environment.wind.mean must be a 2-element list [x, y] in m/s")
    try:
        return WindModel(kind=kind,
                         mean_velocity=(_number(mean[0], "environment.wind.mean[0]"),
                                        _number(mean[1], "environment.wind.mean[1]")),
                         gust_std=_number(doc.get("gust_std", 1.0), "environment.wind.gust_std"),
                         gust_correlation_time=_number(doc.get("gust_correlation_time", 2.0),
                                                       "environment.wind.gust_correlation_time"),
                         gust_cap=_number(doc.get("gust_cap", 3.0), "environment.wind.gust_cap"))
    except ValueError as exc:
        raise ConfigError(f"environment.wind: {exc}") from exc


def _parse_enum(enum_cls, value, path: str):
    if isinstance(value, enum_cls):
        return value
    try:
        return enum_cls(str(value).lower())
    except ValueError:
        options = ", ".join(e.value for e in enum_cls)
        raise ConfigError(f"{path}: {value!r} is not one of: {options}") from None


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    return value


def emit_config(cfg: MissionConfig, batch: Optional[Dict[str, Any]] = None) -> str:
    """Serialize a MissionConfig to YAML; parse(emit(cfg)) reproduces cfg."""
    d = cfg.design
    doc: Dict[str, Any] = {
        "preset": cfg.preset_name or None,
        "design": {
            "shape": d.shape.value,
            "characteristic_radius": d.characteristic_radius,
            "sheet_areal_density": d.sheet_areal_density,
            "layer_count": d.layer_count,
            "stiffener_mass": d.stiffener_mass,
            "structure_mass": d.structure_mass,
            "payload_mass": d.payload_mass,
            "initial_pitch": d.initial_pitch,
        },
        "environment": {
            "wind": {
                "kind": cfg.wind.kind.value,
                "mean": [cfg.wind.mean_velocity[0], cfg.wind.mean_velocity[1]],
                "gust_std": cfg.wind.gust_std,
                "gust_correlation_time": cfg.wind.gust_correlation_time,
                "gust_cap": cfg.wind.gust_cap,
            },
            "water_depth": cfg.water_depth,
            "thermocline": {
                "surface_temp": cfg.thermocline.surface_temp,
                "bottom_temp": cfg.thermocline.bottom_temp,
                "thermocline_depth": cfg.thermocline.thermocline_depth,
                "thermocline_width": cfg.thermocline.thermocline_width,
            },
            "fluid": {
                "air_density": cfg.fluid.air_density,
                "air_kinematic_viscosity": cfg.fluid.air_kinematic_viscosity,
                "water_density": cfg.fluid.water_density,
                "gravity": cfg.fluid.gravity,
                "atmospheric_pressure": cfg.fluid.atmospheric_pressure,
            },
        },
        "release_height": cfg.release_height,
        "aero": {
            "coefficients": {k: getattr(cfg.coefficients, k) for k in sorted(_COEFF_KEYS)},
            "model": {k: getattr(cfg.model, k) for k in sorted(_MODEL_KEYS)},
        },
        "pod": {k: getattr(cfg.pod, k) for k in sorted(_POD_KEYS)},
        "charge": {
            "citric_acid_mass": cfg.charge.citric_acid_mass,
            "bicarbonate_mass": cfg.charge.bicarbonate_mass,
            "water_available": cfg.charge.water_available,
        },
        "buoyancy": {
            "reaction_pressure_cap": cfg.reaction_pressure_cap,
            "temperature": cfg.temperature,
            "reaction_delay": cfg.reaction_delay,
            "compliance_anchors": [[p, v] for p, v in cfg.effective_compliance().anchors],
        },
        "hydro": {k: getattr(cfg.hydro, k) for k in sorted(_HYDRO_KEYS)},
        "trigger": {
            "mode": cfg.trigger.mode.value,
            "max_benthic_time": cfg.trigger.max_benthic_time,
            "depth_limit": cfg.trigger.depth_limit,
        },
        "mission": {
            "preflight_duration": cfg.preflight_duration,
            "transit_duration": cfg.transit_duration,
            "drift_factor": cfg.drift_factor,
            "retrieval_timeout": cfg.retrieval_timeout,
            "shoreline_distance": cfg.shoreline_distance,
            "sma_required_force": cfg.sma_required_force,
            "sma_available_force": cfg.sma_available_force,
        },
        "sampling": {
            "output_interval": cfg.output_interval,
            "sensor_rate": cfg.sensor_rate,
            "underwater_dt": cfg.underwater_dt,
            "aerial_timeout": cfg.aerial_timeout,
        },
        "seed": cfg.seed,
    }
    if doc["preset"] is None:
        del doc["preset"]
    if batch:
        doc["batch"] = {"runs": batch["runs"],
                        "pitch_band_deg": math.degrees(batch["pitch_band"]),
                        "grid_points": batch["grid_points"]}
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=False)


def apply_override(doc: Dict[str, Any], key_path: str, value: Any) -> None:
    """Set a dotted key path inside a parsed document (for sweeps)."""
    parts = key_path.split(".")
    node = doc
    for part in parts[:-1]:
        nxt = node.get(part)
        if nxt is None:
            nxt = {}
            node[part] = nxt
        if not isinstance(nxt, dict):
            raise ConfigError(f"{key_path}: {part} is not a mapping")
        node = nxt
    node[parts[-1]] = value
