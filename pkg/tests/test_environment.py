"""Water column, thermocline, and wind model tests."""

import math

import numpy as np
import pytest

from tumblersim.environment import (FluidProperties, ThermoclineProfile,
                                    WindKind, WindModel, WindSampler,
                                    water_pressure, water_temperature,
                                    wind_sample)


class TestWaterPressure:
    def test_surface_is_atmospheric(self):
        assert water_pressure(0.0) == 101325.0

    def test_five_metres_is_about_50_kpa_gauge(self):
        p = water_pressure(5.0, FluidProperties(water_density=1000.0, gravity=9.81))
        assert p == pytest.approx(101325.0 + 49050.0)
        assert p - 101325.0 == pytest.approx(50e3, rel=0.02)

    def test_linear_in_depth(self):
        gauge_5 = water_pressure(5.0) - 101325.0
        gauge_2_5 = water_pressure(2.5) - 101325.0
        assert gauge_2_5 == pytest.approx(gauge_5 / 2.0, abs=1e-9)

    def test_negative_depth_rejected(self):
        with pytest.raises(ValueError):
            water_pressure(-0.1)

    def test_slope_is_rho_g_exactly(self):
        fluid = FluidProperties()
        rng = np.random.default_rng(0)
        for _ in range(50):
            d1, d2 = sorted(rng.uniform(0.0, 50.0, size=2))
            if d1 == d2:
                continue
            slope = (water_pressure(d2, fluid) - water_pressure(d1, fluid)) / (d2 - d1)
            assert slope == pytest.approx(fluid.water_density * fluid.gravity, rel=1e-9)


class TestWaterTemperature:
    def test_midpoint_at_thermocline_depth(self):
        profile = ThermoclineProfile(surface_temp=18.0, bottom_temp=8.0,
                                     thermocline_depth=2.0, thermocline_width=0.5)
        assert water_temperature(2.0, profile) == pytest.approx(13.0)

    def test_degenerate_profile_is_constant(self):
        profile = ThermoclineProfile(surface_temp=10.0, bottom_temp=10.0)
        for depth in (0.0, 1.0, 5.0, 100.0):
            assert water_temperature(depth, profile) == pytest.approx(10.0)

    def test_hand_solved_sigmoid_point(self):
        # at z = z_tc + w*ln(3) the sigmoid equals 1/4: T = 8 + 12/4 = 11
        profile = ThermoclineProfile(surface_temp=20.0, bottom_temp=8.0,
                                     thermocline_depth=3.0, thermocline_width=0.5)
        z = 3.0 + 0.5 * math.log(3.0)
        assert water_temperature(z, profile) == pytest.approx(11.0, abs=1e-12)

    def test_bounded_by_endpoint_temperatures(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            ts, tb = rng.uniform(-2.0, 30.0, size=2)
            profile = ThermoclineProfile(surface_temp=ts, bottom_temp=tb,
                                         thermocline_depth=rng.uniform(0.5, 10.0),
                                         thermocline_width=rng.uniform(0.05, 3.0))
            t = water_temperature(rng.uniform(0.0, 50.0), profile)
            assert min(ts, tb) - 1e-12 <= t <= max(ts, tb) + 1e-12

    def test_negative_depth_rejected(self):
        with pytest.raises(ValueError):
            water_temperature(-1.0)


class TestWind:
    def test_still_is_zero(self):
        sampler = WindModel(kind=WindKind.STILL).sampler(0)
        for _ in range(10):
            assert sampler.sample(0.01) == (0.0, 0.0)

    def test_constant_returns_mean(self):
        model = WindModel(kind=WindKind.CONSTANT, mean_velocity=(4.5, 0.0))
        sampler = model.sampler(3)
        for _ in range(10):
            assert sampler.sample(0.1) == (4.5, 0.0)

    def test_gust_cap_never_exceeded(self):
        model = WindModel(kind=WindKind.GUSTY, mean_velocity=(4.5, 0.0),
                          gust_std=2.0, gust_cap=3.0)
        sampler = model.sampler(7)
        limit = 4.5 + 3.0
        for _ in range(20000):
            wx, wy = sampler.sample(0.01)
            assert math.hypot(wx, wy) <= limit + 1e-12

    def test_identical_seed_identical_sequence(self):
        model = WindModel(kind=WindKind.GUSTY, mean_velocity=(4.5, 0.0))
        a = [WindSampler(model, 42).sample(0.01) for _ in range(1)]
        s1, s2 = model.sampler(42), model.sampler(42)
        seq1 = [s1.sample(0.01) for _ in range(500)]
        seq2 = [s2.sample(0.01) for _ in range(500)]
        assert seq1 == seq2
        s3 = model.sampler(43)
        assert [s3.sample(0.01) for _ in range(500)] != seq1

    def test_empirical_mean_matches_model(self):
        # AR(1) samples are correlated; the standard error carries the
        # (1+phi)/(1-phi) correction or this test would be meaningless
        dt, tau, n = 0.1, 2.0, 1_000_000
        model = WindModel(kind=WindKind.GUSTY, mean_velocity=(4.5, 0.0),
                          gust_std=1.0, gust_correlation_time=tau, gust_cap=3.0)
        sampler = model.sampler(2024)
        acc_x = acc_y = 0.0
        for _ in range(n):
            wx, wy = sampler.sample(dt)
            acc_x += wx
            acc_y += wy
        phi = math.exp(-dt / tau)
        se = math.sqrt((1.0 + phi) / (1.0 - phi) / n)
        assert abs(acc_x / n - 4.5) < 3.0 * se
        assert abs(acc_y / n - 0.0) < 3.0 * se

    def test_wind_sample_function_delegates(self):
        model = WindModel(kind=WindKind.CONSTANT, mean_velocity=(1.0, 2.0))
        assert wind_sample(model.sampler(0), 0.5) == (1.0, 2.0)

    def test_invalid_dt_rejected(self):
        with pytest.raises(ValueError):
            WindModel().sampler(0).sample(0.0)


class TestInvariants:
    def test_fluid_positivity(self):
        with pytest.raises(ValueError):
            FluidProperties(air_density=0.0)
        with pytest.raises(ValueError):
            FluidProperties(water_density=1.0)   # below air density

    def test_gusty_requires_correlation_time(self):
        with pytest.raises(ValueError):
            WindModel(kind=WindKind.GUSTY, gust_correlation_time=0.0)
