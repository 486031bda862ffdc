"""Config document parsing, validation, and round-trip tests."""

import pytest

from tumblersim.config import (ConfigError, apply_override, build_config,
                               emit_config, parse_config)
from tumblersim.mission import default_lake_config
from tumblersim.presets import DESIGNS, PAYLOAD_ELECTRONICS


class TestDefaults:
    def test_empty_document_is_the_lake_scenario(self):
        cfg, batch, warnings = parse_config("")
        assert warnings == []
        assert cfg == default_lake_config()
        assert batch["runs"] == 5

    def test_preset_loads_design_and_coefficients(self):
        cfg, _, _ = parse_config('preset: "dodecagon3"\n')
        assert cfg.design.structure_mass == 0.022
        assert cfg.design.payload_mass == PAYLOAD_ELECTRONICS
        assert cfg.coefficients.c_translational_lift > 0.0

    def test_unknown_preset_rejected(self):
        with pytest.raises(ConfigError) as err:
            parse_config("preset: heptagon9\n")
        assert "heptagon9" in str(err.value)


class TestRoundTrip:
    @pytest.mark.parametrize("name", sorted(DESIGNS))
    def test_emit_parse_identity(self, name):
        cfg, batch, _ = build_config({"preset": name})
        text = emit_config(cfg, batch)
        cfg2, batch2, _ = parse_config(text)
        assert cfg2 == cfg
        assert batch2 == batch

    def test_override_survives_round_trip(self):
        doc = {"preset": "dodecagon2",
               "design": {"payload_mass": 0.09},
               "environment": {"water_depth": 4.5,
                               "wind": {"kind": "gusty", "mean": [4.5, 0.0],
                                        "gust_cap": 3.0}},
               "seed": 17}
        cfg, batch, _ = build_config(doc)
        cfg2, _, _ = parse_config(emit_config(cfg, batch))
        assert cfg2 == cfg
        assert cfg2.design.payload_mass == 0.09
        assert cfg2.water_depth == 4.5
        assert cfg2.seed == 17


class TestStrictness:
    def test_unknown_key_rejected_with_path(self):
        with pytest.raises(ConfigError) as err:
            parse_config("environment:\n  watr_depth: 3\n")
        assert "environment.watr_depth" in str(err.value)

    def test_lax_mode_downgrades_to_warning(self):
        cfg, _, warnings = parse_config("environment:\n  watr_depth: 3\n", lax=True)
        assert any("watr_depth" in w for w in warnings)
        assert cfg.water_depth == 3.0   # default survived

    def test_semantic_error_names_key(self):
        with pytest.raises(ConfigError) as err:
            parse_config("design:\n  payload_mass: -0.01\n")
        assert "payload_mass" in str(err.value)

    def test_syntax_error_carries_line_number(self):
        with pytest.raises(ConfigError) as err:
            parse_config("preset: dodecagon3\nrelease_height: [oops\n")
        assert "line" in str(err.value)

    def test_type_errors_are_named(self):
        with pytest.raises(ConfigError) as err:
            parse_config("release_height: fifteen\n")
        assert "release_height" in str(err.value)

    def test_payload_guard_applies(self):
        with pytest.raises(ConfigError) as err:
            parse_config("design: {payload_mass: 0.35}\n")
        assert "drone payload" in str(err.value)


class TestChargeSection:
    def test_extent_shorthand(self):
        cfg, _, _ = parse_config("charge: {extent_moles: 1.0e-3}\n")
        assert cfg.charge.citric_acid_mass == pytest.approx(1.9212e-4)
        assert cfg.charge.bicarbonate_mass == pytest.approx(3.0 * 8.401e-5)

    def test_extent_excludes_masses(self):
        with pytest.raises(ConfigError):
            parse_config("charge: {extent_moles: 1.0e-3, citric_acid_mass: 0.001}\n")

    def test_explicit_masses(self):
        cfg, _, _ = parse_config(
            "charge: {citric_acid_mass: 0.002, bicarbonate_mass: 0.005}\n")
        assert cfg.charge.citric_acid_mass == 0.002


class TestOverrides:
    def test_apply_override_nested_path(self):
        doc = {}
        apply_override(doc, "design.payload_mass", 0.06)
        apply_override(doc, "release_height", 10.0)
        assert doc == {"design": {"payload_mass": 0.06}, "release_height": 10.0}

    def test_apply_override_through_scalar_fails(self):
        doc = {"release_height": 15.0}
        with pytest.raises(ConfigError):
            apply_override(doc, "release_height.lower", 1.0)

    def test_custom_design_without_preset(self):
        text = ("preset: null\n"
                "design:\n"
                "  shape: circle\n"
                "  characteristic_radius: 0.1\n"
                "  sheet_areal_density: 0.04\n"
                "  structure_mass: 0.01\n"
                "aero:\n"
                "  coefficients: {c_translational_lift: 1.0, c_drag_broadside: 1.0}\n")
        cfg, _, _ = parse_config(text)
        assert cfg.design.characteristic_radius == 0.1
        assert cfg.preset_name == ""

    def test_custom_design_requires_coefficients(self):
        text = ("preset: null\n"
                "design: {shape: circle, characteristic_radius: 0.1, "
                "sheet_areal_density: 0.04, structure_mass: 0.01}\n")
        with pytest.raises(ConfigError) as err:
            parse_config(text)
        assert "coefficients" in str(err.value)
