"""Command-line front end.

Subcommands: simulate, batch, sweep, regime-map, buoyancy, calibrate.
Simulation-level failures (a mission ending in Failed) still exit 0 -- the
simulation itself succeeded; nonzero exits are reserved for config and IO
errors. The TUMBLERSIM_OUT environment variable overrides the output
directory.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import yaml

from .aerodynamics import (TerminalEvent, calibrate_coefficients,
                           simulate_descent, trajectory_metrics)
from .buoyancy import (InfeasibleDepthError, equilibrium_inflation,
                       max_operational_depth, required_charge)
from .config import ConfigError, apply_override, build_config, parse_config
from .environment import WindKind
from .mission import run_batch, run_mission
from .output import (ensemble_csv, mission_json, regime_map_csv, sensor_csv,
                     sweep_csv, trajectory_csv, trajectory_svg)
from .tumbler import classify_regime

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tumblersim",
        description="Tumbling-descent and benthic-pod mission simulator")
    parser.set_defaults(command=None)
    sub = parser.add_subparsers(dest="command")

    def common(p: argparse.ArgumentParser, needs_out: bool = True) -> None:
        p.add_argument("--config", type=Path, default=None,
                       help="YAML config; defaults to the built-in lake scenario")
        if needs_out:
            p.add_argument("--out", type=Path, default=Path("out"),
                           help="output directory (TUMBLERSIM_OUT overrides)")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--lax", action="store_true",
                       help="warn on unknown config keys instead of failing")

    p = sub.add_parser("simulate", help="run one mission and emit its artifacts")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("batch", help="run a seeded mission ensemble")
    common(p)
    p.add_argument("--runs", type=int, default=None, help="override batch.runs")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers (results are order-independent)")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("sweep", help="sweep one config parameter over values")
    common(p)
    p.add_argument("--parameter", required=True,
                   help="dotted config path, e.g. design.payload_mass")
    p.add_argument("--values", required=True,
                   help="comma-separated values, e.g. 0.03,0.06,0.09")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("regime-map", help="classify a grid of (I*, Re) points")
    p.add_argument("--i-star", default="0.01:0.3:30",
                   help="min:max:count for the I* axis")
    p.add_argument("--re", default="10:1e5:30", help="min:max:count for the Re axis")
    p.add_argument("--log-re", action="store_true", help="log-spaced Re axis")
    p.add_argument("--out", type=Path, default=Path("out"))
    p.set_defaults(func=cmd_regime_map)

    p = sub.add_parser("buoyancy", help="inflation-vs-depth report and inverse design")
    common(p)
    p.add_argument("--target-depth", type=float, default=None,
                   help="report the smallest charge reaching this depth")
    p.set_defaults(func=cmd_buoyancy)

    p = sub.add_parser("calibrate", help="fit aero coefficients to descent targets")
    common(p)
    p.add_argument("--target-descent", type=float, required=True,
                   help="target mean descent rate, m/s")
    p.add_argument("--target-glide", type=float, required=True, help="target glide ratio")
    p.add_argument("--target-period", type=float, default=None,
                   help="optional target oscillation period, s")
    p.add_argument("--budget", type=int, default=500, help="max simulator evaluations")
    p.set_defaults(func=cmd_calibrate)
    return parser


def _load(args) -> tuple:
    if args.config is not None:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        cfg, batch, warnings = parse_config(text, lax=args.lax)
    else:
        cfg, batch, warnings = build_config({}, lax=args.lax)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    if getattr(args, "seed", None) is not None:
        from dataclasses import replace
        cfg = replace(cfg, seed=args.seed)
    return cfg, batch


def _outdir(args) -> Path:
    override = os.environ.get("TUMBLERSIM_OUT")
    out = Path(override) if override else args.out
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_simulate(args) -> int:
    cfg, _ = _load(args)
    out = _outdir(args)
    log = run_mission(cfg)
    (out / "mission.json").write_text(mission_json(log))
    if log.aerial is not None:
        (out / "trajectory.csv").write_text(trajectory_csv(log.aerial, cfg.seed))
        if log.aerial.terminal_event is TerminalEvent.HIT_WATER:
            (out / "trajectory.svg").write_text(trajectory_svg(log.aerial, seed=cfg.seed))
    (out / "sensors.csv").write_text(sensor_csv(log.sensors, cfg.seed))
    print(f"mission: {log.outcome.final_phase.value}"
          + (f" ({log.outcome.failure_reason})" if log.outcome.failure_reason else ""))
    for w in log.warnings:
        print(f"warning: {w}")
    print(f"artifacts written to {out}")
    return EXIT_OK


def cmd_batch(args) -> int:
    cfg, batch = _load(args)
    out = _outdir(args)
    runs = args.runs if args.runs is not None else batch["runs"]
    summary = run_batch(cfg, runs, base_seed=cfg.seed,
                        pitch_band=batch["pitch_band"],
                        grid_points=batch["grid_points"], jobs=args.jobs)
    (out / "ensemble.csv").write_text(ensemble_csv(summary, cfg.seed))
    runs_dir = out / "runs"
    runs_dir.mkdir(exist_ok=True)
    for i, log in enumerate(summary.runs):
        (runs_dir / f"run_{i:03d}.json").write_text(mission_json(log))
    doc = {
        "base_seed": cfg.seed,
        "runs": runs,
        "completed": summary.completed,
        "dispersion_radius_m": _json_float(summary.dispersion_radius),
        "metric_stats": {k: {"mean": _json_float(v[0]), "std": _json_float(v[1])}
                         for k, v in sorted(summary.metric_stats.items())},
        "outcomes": [{"seed": log.seed,
                      "final_phase": log.outcome.final_phase.value,
                      "failure_reason": log.outcome.failure_reason,
                      "resurfaced": log.outcome.resurfaced,
                      "landing_x_m": _json_float(log.outcome.landing_point[0])}
                     for log in summary.runs],
    }
    (out / "batch_summary.json").write_text(json.dumps(doc, indent=2) + "\n")
    print(f"batch: {summary.completed}/{runs} runs retrieved; "
          f"dispersion radius {summary.dispersion_radius:.2f} m")
    print(f"artifacts written to {out}")
    return EXIT_OK


def _json_float(v: float):
    return None if (isinstance(v, float) and math.isnan(v)) else float(v)


def cmd_sweep(args) -> int:
    if args.config is not None:
        try:
            doc = yaml.safe_load(Path(args.config).read_text()) or {}
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        except yaml.YAMLError as exc:
            raise ConfigError(f"YAML syntax error: {exc}") from exc
    else:
        doc = {}
    values = [v for v in args.values.split(",") if v != ""]
    if not values:
        raise ConfigError("--values must list at least one value")
    out = _outdir(args)
    results = []
    seed = args.seed if args.seed is not None else doc.get("seed", 0)
    for raw in values:
        try:
            value: Any = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        case = json.loads(json.dumps(doc))   # deep copy
        apply_override(case, args.parameter, value)
        cfg, _, warnings = build_config(case, lax=args.lax)
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
        if args.seed is not None:
            from dataclasses import replace
            cfg = replace(cfg, seed=args.seed)
        wind = cfg.wind if cfg.wind.kind is not WindKind.STILL else None
        traj = simulate_descent(cfg.design, cfg.fluid, cfg.coefficients,
                                cfg.release_height, seed=cfg.seed, wind=wind,
                                model=cfg.model, timeout=cfg.aerial_timeout)
        if traj.terminal_event is not TerminalEvent.HIT_WATER:
            raise ConfigError(f"sweep value {raw}: descent ended in "
                              f"{traj.terminal_event.value}")
        metrics = trajectory_metrics(traj)
        tumbling = traj.tumbling_enabled and metrics.flip_count > 0
        results.append((value, metrics, tumbling))
        print(f"{args.parameter}={raw}: mean={metrics.mean_descent_rate:.3f} m/s "
              f"glide={metrics.glide_ratio:.3f} tumbling={tumbling}")
    (out / "sweep.csv").write_text(sweep_csv(args.parameter, results, seed))
    print(f"artifacts written to {out}")
    return EXIT_OK


def _parse_axis(spec: str, log_scale: bool = False) -> np.ndarray:
    try:
        lo, hi, count = spec.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError:
        raise ConfigError(f"axis spec {spec!r} must be min:max:count") from None
    if count < 1 or hi < lo:
        raise ConfigError(f"axis spec {spec!r} is not well-ordered")
    if count == 1:
        return np.array([lo])
    if log_scale:
        return np.geomspace(lo, hi, count)
    return np.linspace(lo, hi, count)


def cmd_regime_map(args) -> int:
    i_axis = _parse_axis(args.i_star)
    re_axis = _parse_axis(args.re, log_scale=args.log_re)
    out = _outdir(args)
    rows = []
    for i_star in i_axis:
        for re in re_axis:
            regime = classify_regime(float(i_star), float(re))
            rows.append((float(i_star), float(re), regime.value))
    (out / "regime_map.csv").write_text(regime_map_csv(rows))
    print(f"{len(rows)} grid points classified; artifacts written to {out}")
    return EXIT_OK


def cmd_buoyancy(args) -> int:
    cfg, _ = _load(args)
    out = _outdir(args)
    compliance = cfg.effective_compliance()
    report: Dict[str, Any] = {"status": "ok"}
    if args.target_depth is not None:
        try:
            charge = required_charge(args.target_depth, cfg.pod, cfg.fluid,
                                     cfg.temperature, compliance,
                                     cfg.reaction_pressure_cap)
            depth = max_operational_depth(charge, cfg.pod, cfg.fluid,
                                          cfg.temperature, compliance,
                                          cfg.reaction_pressure_cap)
            report.update({
                "target_depth_m": args.target_depth,
                "citric_acid_mass_kg": charge.citric_acid_mass,
                "bicarbonate_mass_kg": charge.bicarbonate_mass,
                "achieved_depth_m": depth,
            })
            print(f"charge for {args.target_depth:.2f} m: "
                  f"{charge.citric_acid_mass * 1e3:.4f} g citric acid + "
                  f"{charge.bicarbonate_mass * 1e3:.4f} g bicarbonate "
                  f"(reaches {depth:.2f} m)")
        except InfeasibleDepthError as exc:
            report.update({"status": "infeasible", "target_depth_m": args.target_depth,
                           "envelope_m": exc.envelope})
            print(f"infeasible: {exc}")
        (out / "buoyancy_design.json").write_text(json.dumps(report, indent=2) + "\n")
        print(f"artifacts written to {out}")
        return EXIT_OK

    max_depth = max_operational_depth(cfg.charge, cfg.pod, cfg.fluid,
                                      cfg.temperature, compliance,
                                      cfg.reaction_pressure_cap)
    required = cfg.pod.float_fraction(cfg.fluid)
    rows = []
    depth = 0.0
    while depth <= max(max_depth + 1.0, 1.0):
        ambient = cfg.fluid.atmospheric_pressure \
            + cfg.fluid.water_density * cfg.fluid.gravity * depth
        state = equilibrium_inflation(cfg.charge, cfg.pod, ambient, cfg.temperature,
                                      compliance, cfg.reaction_pressure_cap)
        rows.append((depth, state.delta_v_fraction,
                     state.delta_v_fraction - required))
        depth = round(depth + 0.5, 6)
    body = "\n".join("{0!r},{1!r},{2!r}".format(*row) for row in rows)
    csv_text = ("# seed={0}\ndepth_m,delta_v_fraction,float_margin_fraction\n{1}\n"
                .format(cfg.seed, body))
    (out / "buoyancy_table.csv").write_text(csv_text)
    print("depth_m  dv/V0    margin")
    for depth, frac, margin in rows:
        print(f"{depth:7.2f}  {frac:.4f}  {margin:+.4f}")
    print(f"max operational depth: {max_depth:.2f} m (float fraction {required:.4f})")
    print(f"artifacts written to {out}")
    return EXIT_OK


def cmd_calibrate(args) -> int:
    cfg, _ = _load(args)
    out = _outdir(args)
    targets = {"mean_descent_rate": args.target_descent,
               "glide_ratio": args.target_glide}
    if args.target_period is not None:
        targets["oscillation_period"] = args.target_period
    result = calibrate_coefficients(cfg.design, cfg.fluid, targets,
                                    budget=args.budget, initial=cfg.coefficients,
                                    release_height=cfg.release_height,
                                    model=cfg.model)
    fragment = {
        "aero": {
            "coefficients": {
                "c_translational_lift": result.coefficients.c_translational_lift,
                "c_rotational_lift": result.coefficients.c_rotational_lift,
                "c_drag_edgewise": result.coefficients.c_drag_edgewise,
                "c_drag_broadside": result.coefficients.c_drag_broadside,
                "c_rotational_damping": result.coefficients.c_rotational_damping,
                "c_lateral_drift": result.coefficients.c_lateral_drift,
            }
        }
    }
    text = yaml.safe_dump(fragment, sort_keys=False)
    header = (f"# calibration residual (rms relative): {result.residual!r}\n"
              f"# evaluations: {result.evaluations}\n"
              f"# tumbling achieved: {str(result.tumbling_achieved).lower()}\n")
    for key, err in sorted(result.metric_errors.items()):
        header += f"# {key} relative error: {err!r}\n"
    (out / "calibrated.yaml").write_text(header + text)
    status = "ok" if result.tumbling_achieved else "calibration-failure (no tumbling)"
    print(f"{status}: residual {result.residual:.4f} after {result.evaluations} evaluations")
    print(f"artifacts written to {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
