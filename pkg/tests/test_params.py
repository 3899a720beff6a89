"""Parameter validation, overrides, and packaged defaults."""

import pytest

from vevid import EnhanceParams, ParamError, default_params
from vevid.params import builtin_defaults


def _params(**overrides):
    base = dict(S=0.3, T=2e-4, G=1.4, b=0.16)
    base.update(overrides)
    return EnhanceParams(**base)


class TestValidation:
    def test_accepts_calibrated_shape(self):
        p = _params()
        assert p.mode == "lowlight" and p.path == "full" and p.norm == "per_frame"

    def test_zero_strength_allowed(self):
        assert _params(S=0.0).S == 0.0

    @pytest.mark.parametrize(
        "field,value",
        [("S", -0.1), ("T", 0.0), ("T", -1.0), ("G", 0.0), ("G", -2.0), ("b", -0.1)],
    )
    def test_rejects_bad_numbers(self, field, value):
        with pytest.raises(ParamError):
            _params(**{field: value})

    def test_rejects_non_finite(self):
        with pytest.raises(ParamError):
            _params(T=float("nan"))

    @pytest.mark.parametrize(
        "field,value", [("mode", "night"), ("path", "short"), ("norm", "clamp")]
    )
    def test_rejects_unknown_enums(self, field, value):
        with pytest.raises(ParamError):
            _params(**{field: value})

    def test_zero_bias_full_path_only(self):
        assert _params(b=0.0, path="full").b == 0.0
        with pytest.raises(ParamError):
            _params(b=0.0, path="lite")

    def test_fixed_norm_lite_path_only(self):
        assert _params(path="lite", norm="fixed").norm == "fixed"
        with pytest.raises(ParamError):
            _params(path="full", norm="fixed")


class TestOverrides:
    def test_replaces_given_keys(self):
        p = _params().with_overrides({"G": 2.0, "path": "lite"})
        assert p.G == 2.0 and p.path == "lite"
        assert p.S == 0.3  # untouched

    def test_overridden_copy_is_validated(self):
        with pytest.raises(ParamError):
            _params().with_overrides({"T": -1.0})

    def test_unknown_keys_rejected(self):
        with pytest.raises(ParamError):
            _params().with_overrides({"gain": 2.0})

    def test_original_unchanged(self):
        p = _params()
        p.with_overrides({"G": 9.0})
        assert p.G == 1.4


class TestDefaults:
    @pytest.mark.parametrize("mode", ["lowlight", "color"])
    def test_defaults_valid_and_mode_bound(self, mode):
        p = default_params(mode)
        assert p.mode == mode
        assert p.S > 0 and p.T > 0 and p.G > 0 and p.b > 0

    def test_unknown_mode_rejected(self):
        with pytest.raises(ParamError):
            default_params("brighten")

    def test_config_file_backs_defaults(self):
        table = builtin_defaults()
        p = default_params("lowlight")
        entry = table["modes"]["lowlight"]
        assert (p.S, p.T, p.G, p.b) == (entry["S"], entry["T"], entry["G"], entry["b"])

    def test_calibration_stats_recorded(self):
        # the shipped defaults carry the corpus statistics they were
        # calibrated against, so regressions are visible in review
        calib = builtin_defaults()["calibration"]
        assert calib["spearman_full_vs_lite_min"] >= 0.9
        assert calib["mean_v_gain_min"] > 0
