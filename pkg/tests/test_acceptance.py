"""Acceptance criteria, one test per criterion with its stated tolerances.

Each test prints a PASS line so `pytest -s tests/test_acceptance.py` reads as
the acceptance report.
"""

import math
import time
import numpy as np

from tumblersim.aerodynamics import (AeroCoefficients, TerminalEvent,
                                     dynamic_inertia, simulate_descent,
                                     trajectory_metrics)
from tumblersim.buoyancy import (BladderCompliance, MOLAR_MASS_BICARBONATE,
                                 MOLAR_MASS_CITRIC_ACID, ReactantCharge,
                                 gas_from_reactants, max_operational_depth)
from tumblersim.cli import main as cli_main
from tumblersim.environment import FluidProperties, WindKind, WindModel
from tumblersim.mission import (MissionPhase, default_lake_config, run_batch,
                                run_mission, validate_log)
from tumblersim.pod import HydroParams, PodState, simulate_underwater, terminal_sink_speed
from tumblersim.presets import COEFFICIENTS, DESIGNS, REFERENCE_CHARGE, REFERENCE_POD, design
from tumblersim.tumbler import FallRegime, classify_regime, effective_disc

FLUID = FluidProperties()


def report(n, text):
    print(f"PASS criterion {n}: {text}")


def test_criterion_1_regime_classification_exact():
    """100-point grid reproduces the regime bands with zero errors."""
    t0 = time.time()
    i_grid = np.linspace(0.005, 0.25, 100)
    errors = 0
    for i_star in i_grid:
        regime = classify_regime(float(i_star), 4.0e4)
        if 0.04 <= i_star <= 0.2:
            expected = FallRegime.TUMBLING
        elif i_star < 0.04:
            expected = FallRegime.FLUTTERING
        else:
            expected = FallRegime.CHAOTIC
        if regime is not expected:
            errors += 1
        assert classify_regime(float(i_star), 50.0) is FallRegime.STEADY_FALLING
    elapsed = time.time() - t0
    assert errors == 0
    assert elapsed < 1.0
    report(1, f"0/100 misclassifications on the I* grid in {elapsed:.3f} s")


def test_criterion_2_calibrated_descent_bands():
    """Light dodecagon, no payload, 15 m still-air release."""
    t0 = time.time()
    traj = simulate_descent(design("dodecagon3"), FLUID,
                            COEFFICIENTS["dodecagon3"], 15.0)
    m = trajectory_metrics(traj)
    elapsed = time.time() - t0
    assert traj.terminal_event is TerminalEvent.HIT_WATER
    assert 0.8 <= m.mean_descent_rate <= 2.0
    assert m.peak_descent_rate <= 2.75
    assert 1.2 <= m.glide_ratio <= 1.8
    assert elapsed < 5.0
    report(2, f"mean {m.mean_descent_rate:.3f} m/s, peak {m.peak_descent_rate:.3f} m/s, "
              f"glide {m.glide_ratio:.3f} in {elapsed:.2f} s")


def test_criterion_3_payload_effect_bands():
    """60 g payload: glide drops by 1.4-2.2x, descent rises 10-30%."""
    bare = trajectory_metrics(simulate_descent(design("dodecagon3"), FLUID,
                                               COEFFICIENTS["dodecagon3"], 15.0))
    loaded = trajectory_metrics(simulate_descent(design("dodecagon3", payload_mass=0.060),
                                                 FLUID, COEFFICIENTS["dodecagon3"], 15.0))
    glide_factor = bare.glide_ratio / loaded.glide_ratio
    descent_increase = loaded.mean_descent_rate / bare.mean_descent_rate - 1.0
    assert 1.4 <= glide_factor <= 2.2
    assert 0.10 <= descent_increase <= 0.30
    report(3, f"glide reduction factor {glide_factor:.2f}, "
              f"descent increase {descent_increase:.1%}")


def test_criterion_4_payload_sweep_threshold():
    """30-120 g tumbles with monotone glide; 150 g cannot tumble."""
    glides, rates = [], []
    for payload in (0.03, 0.06, 0.09, 0.12):
        traj = simulate_descent(design("dodecagon2", payload_mass=payload), FLUID,
                                COEFFICIENTS["dodecagon2"], 15.0)
        m = trajectory_metrics(traj)
        assert traj.tumbling_enabled and m.flip_count > 0, f"no tumbling at {payload} kg"
        glides.append(m.glide_ratio)
        rates.append(m.mean_descent_rate)
    assert all(b <= a for a, b in zip(glides, glides[1:])), glides
    assert all(b >= a for a, b in zip(rates, rates[1:])), rates
    heavy = simulate_descent(design("dodecagon2", payload_mass=0.150), FLUID,
                             COEFFICIENTS["dodecagon2"], 15.0)
    assert not heavy.tumbling_enabled
    assert trajectory_metrics(heavy).flip_count == 0
    report(4, f"glide {['%.3f' % g for g in glides]} monotone, 150 g grounded")


def test_criterion_5_buoyancy_anchors_and_envelope():
    """Compliance anchors exact; reference resurfacing depth in [4.0, 5.5] m."""
    t0 = time.time()
    compliance = BladderCompliance.default()
    assert compliance.expansion(20e3) == 0.057
    assert compliance.expansion(70e3) == 0.30
    depth = max_operational_depth(REFERENCE_CHARGE, REFERENCE_POD, FLUID)
    elapsed = time.time() - t0
    assert 4.0 <= depth <= 5.5
    assert elapsed < 1.0
    report(5, f"anchors exact, max operational depth {depth:.2f} m in {elapsed:.3f} s")


def test_criterion_6_stoichiometry_oracle():
    """1000 random charges conserve mass and match the limiting-reagent oracle."""
    t0 = time.time()
    rng = np.random.default_rng(123)
    for _ in range(1000):
        acid = rng.uniform(0.0, 0.05)
        bicarb = rng.uniform(0.0, 0.05)
        y = gas_from_reactants(ReactantCharge(acid, bicarb))
        total = acid + bicarb
        if total > 0.0:
            assert abs(y.total_mass() - total) / total < 1e-12
        n_acid = acid / MOLAR_MASS_CITRIC_ACID
        n_bicarb = bicarb / MOLAR_MASS_BICARBONATE
        extent = n_bicarb / 3.0 if n_bicarb / 3.0 <= n_acid else n_acid
        assert y.co2_moles == 3.0 * extent
    elapsed = time.time() - t0
    assert elapsed < 1.0
    report(6, f"1000 charges conserved within 1e-12 in {elapsed:.3f} s")


def test_criterion_7_ballistic_oracle():
    """Zero-coefficient fall from 10 m matches closed-form kinematics."""
    t0 = time.time()
    traj = simulate_descent(design("dodecagon3"), FLUID, AeroCoefficients(), 10.0)
    last = traj.samples[-1]
    t_exact = math.sqrt(2.0 * 10.0 / FLUID.gravity)
    elapsed = time.time() - t0
    assert abs(last.time - t_exact) < 1e-4
    assert abs(last.position[0]) < 1e-6
    assert abs(last.position[1] - 10.0) < 1e-6
    assert elapsed < 1.0
    report(7, f"impact time error {abs(last.time - t_exact):.2e} s in {elapsed:.3f} s")


def test_criterion_8_energy_dissipation():
    """50 randomized still-air tumbling runs never gain mechanical energy."""
    t0 = time.time()
    rng = np.random.default_rng(2718)
    names = sorted(DESIGNS)
    checked = 0
    for _ in range(50):
        name = names[rng.integers(len(names))]
        payload = float(rng.uniform(0.0, 0.08))
        pitch = float(rng.uniform(-0.45, 0.45))
        d = design(name, payload_mass=payload, initial_pitch=pitch)
        height = float(rng.uniform(8.0, 15.0))
        traj = simulate_descent(d, FLUID, COEFFICIENTS[name], height)
        assert traj.terminal_event is TerminalEvent.HIT_WATER
        disc = effective_disc(d, FLUID)
        inertia = dynamic_inertia(d, disc)
        mass = d.total_mass()
        tol = 1e-6 * mass * FLUID.gravity * height
        energies = [0.5 * mass * (s.velocity[0] ** 2 + s.velocity[1] ** 2)
                    + 0.5 * inertia * s.pitch_rate ** 2
                    + mass * FLUID.gravity * (height - s.position[1])
                    for s in traj.samples]
        for e0, e1 in zip(energies, energies[1:]):
            assert e1 <= e0 + tol
        checked += 1
    elapsed = time.time() - t0
    assert checked == 50
    assert elapsed < 30.0
    report(8, f"50 runs, energy non-increasing (per-step tol) in {elapsed:.1f} s")


def test_criterion_9_terminal_velocity():
    """100 randomized sinking pods within 1% of the closed-form speed."""
    t0 = time.time()
    rng = np.random.default_rng(31415)
    from tumblersim.buoyancy import PodGeometry
    for _ in range(100):
        v0 = rng.uniform(5e-5, 5e-4)
        pod = PodGeometry(dry_mass=1000.0 * v0 * rng.uniform(1.02, 1.5),
                          displacement_volume=v0, headspace_volume=0.1 * v0,
                          max_delta_v_fraction=0.35)
        hydro = HydroParams(drag_coefficient=rng.uniform(0.3, 1.2),
                            reference_area=rng.uniform(1e-3, 6e-3),
                            added_mass_fraction=rng.uniform(0.0, 1.0))
        v_t = terminal_sink_speed(pod, FLUID, hydro)
        added = hydro.added_mass_fraction * FLUID.water_density * v0
        tau = (pod.dry_mass + added) / \
            (FLUID.water_density * hydro.drag_coefficient * hydro.reference_area * v_t)
        start = PodState(depth=0.0, attached=False)
        state, _ = simulate_underwater(start, pod, hydro, FLUID, water_depth=1e9,
                                       until=lambda s, e: e >= 10.0 * tau,
                                       dt=min(0.01, tau / 25.0), sensor_rate=0.0)
        assert abs(state.vertical_velocity - v_t) / v_t < 0.01
    elapsed = time.time() - t0
    assert elapsed < 10.0
    report(9, f"100 pods within 1% of terminal speed in {elapsed:.1f} s")


def test_criterion_10_end_to_end_missions():
    """3 m lake retrieved and resurfaced; 8 m fails recovery; logs are valid."""
    t0 = time.time()
    shallow = run_mission(default_lake_config())
    assert shallow.outcome.final_phase is MissionPhase.RETRIEVED
    assert shallow.outcome.resurfaced
    validate_log(shallow)
    deep = run_mission(default_lake_config(water_depth=8.0))
    assert deep.outcome.final_phase is MissionPhase.FAILED
    assert deep.outcome.failure_reason == "recovery_unreachable"
    validate_log(deep)
    elapsed = time.time() - t0
    assert elapsed < 10.0
    report(10, f"3 m retrieved/resurfaced, 8 m recovery_unreachable in {elapsed:.1f} s")


def test_criterion_11_batch_determinism(tmp_path):
    """Two identical batch invocations emit byte-identical artifacts."""
    cfg = tmp_path / "cfg.yaml"
    cfg.write_text("environment:\n"
                   "  wind: {kind: gusty, mean: [3.0, 0.5], gust_std: 1.0,\n"
                   "         gust_correlation_time: 2.0, gust_cap: 3.0}\n"
                   "batch: {runs: 3}\n"
                   "seed: 21\n")
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert cli_main(["batch", "--config", str(cfg), "--out", str(out_a)]) == 0
    assert cli_main(["batch", "--config", str(cfg), "--out", str(out_b)]) == 0
    csv_a = (out_a / "ensemble.csv").read_bytes()
    csv_b = (out_b / "ensemble.csv").read_bytes()
    json_a = (out_a / "batch_summary.json").read_bytes()
    json_b = (out_b / "batch_summary.json").read_bytes()
    assert csv_a == csv_b
    assert json_a == json_b
    report(11, f"batch CSV ({len(csv_a)} B) and JSON ({len(json_a)} B) byte-identical")


def test_criterion_12_ensemble_robustness_in_gusts():
    """20 gusty-wind missions: at least 18 complete the full phase sequence."""
    wind = WindModel(kind=WindKind.GUSTY, mean_velocity=(4.5, 0.0),
                     gust_std=1.0, gust_correlation_time=2.0, gust_cap=3.0)
    cfg = default_lake_config(wind=wind)
    summary = run_batch(cfg, 20, base_seed=100)
    assert summary.completed >= 18
    assert math.isfinite(summary.dispersion_radius)
    for log in summary.runs:
        validate_log(log)
    report(12, f"{summary.completed}/20 retrieved under 4.5 m/s wind "
               f"(gusts to 7.5 m/s), dispersion radius {summary.dispersion_radius:.2f} m")
