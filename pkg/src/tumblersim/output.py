"""File emission: CSV logs, the trajectory SVG, and the mission JSON.

All text artifacts are deterministic for a given simulation result: LF line
endings, '.' decimal separator, no timestamps, and the seed recorded in a
leading '#' metadata comment (CSV) or a field (JSON).
"""

from __future__ import annotations

import json
import math
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .aerodynamics import Trajectory, TrajectoryMetrics
from .mission import EnsembleSummary, MissionLog
from .pod import SensorRecord

SVG_RATE_SCALE = 3.0   # m/s full scale of the descent-rate colour map


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def _csv(lines_meta: Dict[str, Any], header: Sequence[str],
         rows: Iterable[Sequence[Any]]) -> str:
    out: List[str] = []
    for key, value in lines_meta.items():
        out.append(f"# {key}={_fmt(value)}")
    out.append(",".join(header))
    for row in rows:
        out.append(",".join(_fmt(v) for v in row))
    return "\n".join(out) + "\n"


def trajectory_csv(traj: Trajectory, seed: int) -> str:
    header = ["time_s", "x_m", "z_m", "vx_ms", "vz_ms", "pitch_rad",
              "pitch_rate_rads", "descent_rate_ms"]
    rows = [(float(s.time), float(s.position[0]), float(s.position[1]),
             float(s.velocity[0]), float(s.velocity[1]), float(s.pitch),
             float(s.pitch_rate), float(s.velocity[1]))
            for s in traj.samples]
    meta = {"seed": seed, "terminal_event": traj.terminal_event.value,
            "release_height_m": float(traj.release_height)}
    return _csv(meta, header, rows)


def sensor_csv(records: Sequence[SensorRecord], seed: int) -> str:
    header = ["time_s", "phase", "depth_m", "pressure_pa", "temperature_c",
              "gps_fix", "gps_x_m", "gps_y_m"]
    rows = [(float(r.time), r.phase, float(r.depth), float(r.pressure),
             float(r.temperature), r.gps_fix, float(r.gps_position[0]),
             float(r.gps_position[1]))
            for r in records]
    return _csv({"seed": seed}, header, rows)


def ensemble_csv(summary: EnsembleSummary, base_seed: int) -> str:
    header = ["grid_z_m", "mean_x_m", "std_x_m", "mean_descent_rate_ms"]
    rows = [(float(z), float(mx), float(sx), float(mr))
            for z, mx, sx, mr in zip(summary.grid_z, summary.mean_x,
                                     summary.std_x, summary.mean_descent_rate)]
    meta = {"base_seed": base_seed, "runs": len(summary.runs),
            "completed": summary.completed,
            "dispersion_radius_m": float(summary.dispersion_radius)}
    return _csv(meta, header, rows)


def sweep_csv(parameter: str, results: Sequence[Tuple[Any, TrajectoryMetrics, bool]],
              seed: int) -> str:
    header = ["value", "mean_descent_rate", "glide_ratio", "tumbling"]
    rows = [(value, float(m.mean_descent_rate), float(m.glide_ratio), tumbling)
            for value, m, tumbling in results]
    return _csv({"seed": seed, "parameter": parameter}, header, rows)


def regime_map_csv(rows: Sequence[Tuple[float, float, str]]) -> str:
    header = ["i_star", "re", "regime"]
    return _csv({}, header, [(float(i), float(r), name) for i, r, name in rows])


def _rate_color(rate: float) -> str:
    """Descent rate to hex colour on the fixed 0-3 m/s scale (dark = fast)."""
    t = min(1.0, max(0.0, rate / SVG_RATE_SCALE))
    bright = (255, 255, 204)
    dark = (64, 0, 32)
    rgb = tuple(round(b + (d - b) * t) for b, d in zip(bright, dark))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def trajectory_svg(traj: Trajectory, width: int = 640, height: int = 480,
                   seed: Optional[int] = None) -> str:
    """x-z trajectory with per-segment colour mapped from descent rate."""
    xs = [s.position[0] for s in traj.samples]
    zs = [s.position[1] for s in traj.samples]
    rates = [s.velocity[1] for s in traj.samples]
    x_min, x_max = min(xs), max(xs)
    z_min, z_max = min(zs), max(zs)
    span_x = max(x_max - x_min, 1e-6)
    span_z = max(z_max - z_min, 1e-6)
    margin = 40.0
    sx = (width - 2 * margin) / span_x
    sz = (height - 2 * margin) / span_z
    scale = min(sx, sz)

    def px(x: float) -> float:
        return margin + (x - x_min) * scale

    def pz(z: float) -> float:
        return margin + (z - z_min) * scale

    parts: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    if seed is not None:
        parts.append(f"<!-- seed={seed} -->")
    parts += [
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{margin}" y="20" font-size="12">descent trajectory '
        f'(colour: descent rate 0-{SVG_RATE_SCALE:g} m/s, dark = fast)</text>',
    ]
    for i in range(len(xs) - 1):
        rate = 0.5 * (rates[i] + rates[i + 1])
        parts.append(
            f'<line x1="{px(xs[i]):.2f}" y1="{pz(zs[i]):.2f}" '
            f'x2="{px(xs[i + 1]):.2f}" y2="{pz(zs[i + 1]):.2f}" '
            f'stroke="{_rate_color(rate)}" stroke-width="2"/>')
    # colour bar
    bar_x, bar_w = width - 26.0, 12.0
    n_seg = 24
    for i in range(n_seg):
        r0 = SVG_RATE_SCALE * (1.0 - (i + 0.5) / n_seg)
        y0 = margin + (height - 2 * margin) * i / n_seg
        h = (height - 2 * margin) / n_seg + 1
        parts.append(f'<rect x="{bar_x}" y="{y0:.2f}" width="{bar_w}" '
                     f'height="{h:.2f}" fill="{_rate_color(r0)}"/>')
    parts.append(f'<text x="{bar_x - 4}" y="{margin}" font-size="10" '
                 f'text-anchor="end">{SVG_RATE_SCALE:g} m/s</text>')
    parts.append(f'<text x="{bar_x - 4}" y="{height - margin}" font-size="10" '
                 f'text-anchor="end">0</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def mission_json(log: MissionLog) -> str:
    """One JSON document per run; schema documented in the README."""
    metrics: Optional[Dict[str, Any]] = None
    if log.aerial_metrics is not None:
        m = log.aerial_metrics
        metrics = {
            "mean_descent_rate_ms": float(m.mean_descent_rate),
            "peak_descent_rate_ms": float(m.peak_descent_rate),
            "glide_ratio": float(m.glide_ratio),
            "flip_count": m.flip_count,
            "tumbling_onset_time_s": None if m.tumbling_onset_time is None
                                     else float(m.tumbling_onset_time),
            "oscillation_period_s": None if m.oscillation_period is None
                                    else float(m.oscillation_period),
        }
    doc = {
        "seed": log.seed,
        "outcome": {
            "final_phase": log.outcome.final_phase.value,
            "failure_reason": log.outcome.failure_reason,
            "landing_point_m": [float(v) for v in log.outcome.landing_point],
            "benthic_duration_s": float(log.outcome.benthic_duration),
            "max_depth_m": float(log.outcome.max_depth),
            "resurfaced": log.outcome.resurfaced,
            "retrieval_position_m": None if log.outcome.retrieval_position is None
                                    else [float(v) for v in log.outcome.retrieval_position],
            "retrieval_mode": log.outcome.retrieval_mode,
        },
        "warnings": list(log.warnings),
        "transitions": [
            {"time_s": float(t.time), "from": t.from_phase.value,
             "to": t.to_phase.value, "cause": t.cause}
            for t in log.transitions
        ],
        "aerial": None if log.aerial is None else {
            "terminal_event": log.aerial.terminal_event.value,
            "tumbling_enabled": log.aerial.tumbling_enabled,
            "samples": len(log.aerial.samples),
            "metrics": metrics,
        },
        "sensor_records": len(log.sensors),
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_strict_csv(text: str) -> Tuple[Dict[str, str], List[str], List[List[str]]]:
    """Strict reader for the emitted CSVs; used by tests and downstream tools.

    Requires LF endings, leading '#' metadata lines, one header, and a fixed
    column count throughout.
    """
    if "\r" in text:
        raise ValueError("CSV must use LF line endings")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    meta: Dict[str, str] = {}
    idx = 0
    while idx < len(lines) and lines[idx].startswith("#"):
        body = lines[idx][1:].strip()
        key, _, value = body.partition("=")
        meta[key.strip()] = value.strip()
        idx += 1
    if idx >= len(lines):
        raise ValueError("CSV has no header")
    header = lines[idx].split(",")
    rows = []
    for line in lines[idx + 1:]:
        cells = line.split(",")
        if len(cells) != len(header):
            raise ValueError(f"row has {len(cells)} cells, header has {len(header)}")
        rows.append(cells)
    return meta, header, rows
