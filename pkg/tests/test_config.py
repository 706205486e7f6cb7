"""
Tests for experiment configs, presets and settings
"""

import json
from pathlib import Path

import pytest

from gaugeflow.config.experiment import (
    ExperimentConfig,
    StageName,
    json_path,
    load_experiment_config,
    validate_experiment,
)
from gaugeflow.config.settings import Settings
from gaugeflow.services.fixtures import EXPERIMENT_PRESETS, experiment_preset
from gaugeflow.utils.errors import ConfigError, InputError

REPO_ROOT = Path(__file__).resolve().parent.parent


def _paths(error: ConfigError):
    return {path for path, _ in error.problems}


class TestJsonPath:
    def test_nested_locations(self):
        assert json_path(("stages", 2)) == "$.stages[2]"
        assert json_path(("field", "covariance", 0, 1)) == "$.field.covariance[0][1]"
        assert json_path(()) == "$"


class TestValidation:
    """Field validators and cross-section checks"""

    def test_defaults(self):
        config = ExperimentConfig()
        assert config.stages == [StageName.COMPLEX, StageName.HOMOLOGY]
        assert config.group.kind == "u1"
        assert config.seed is None
        assert config.to_dict()["bundle"]["mode"] == "trivial"

    def test_minimal_config(self):
        config = validate_experiment({"complex": {"fixture": "hollow_triangle"}})
        assert config.complex.sources() == ["fixture"]

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError) as info:
            validate_experiment({"complex": {"fixture": "hollow_triangle"}, "colour": 1})
        assert "$.colour" in _paths(info.value)

    def test_out_of_range_value_reports_path(self):
        payload = {
            "complex": {"fixture": "hollow_triangle"},
            "bundle": {"density": 2.0},
        }
        with pytest.raises(ConfigError) as info:
            validate_experiment(payload)
        assert "$.bundle.density" in _paths(info.value)

    def test_unknown_stage_reports_index(self):
        payload = {"complex": {"fixture": "hollow_triangle"}, "stages": ["complex", "paint"]}
        with pytest.raises(ConfigError) as info:
            validate_experiment(payload)
        assert "$.stages[1]" in _paths(info.value)

    def test_exactly_one_complex_source(self):
        with pytest.raises(ConfigError) as info:
            validate_experiment({"complex": {"fixture": "full_triangle", "simplices": [[0, 1]]}})
        assert "$.complex" in _paths(info.value)
        with pytest.raises(ConfigError):
            validate_experiment({})

    def test_unknown_fixture(self):
        with pytest.raises(ConfigError) as info:
            validate_experiment({"complex": {"fixture": "klein_bottle"}})
        assert "$.complex.fixture" in _paths(info.value)

    def test_missing_point_cloud_file(self, tmp_path):
        with pytest.raises(ConfigError) as info:
            validate_experiment({"complex": {"points": str(tmp_path / "none.csv")}})
        assert "$.complex.points" in _paths(info.value)

    def test_point_cloud_needs_radius(self, tmp_path):
        points = tmp_path / "points.csv"
        points.write_text("x,y\n0,0\n1,0\n")
        with pytest.raises(ConfigError) as info:
            validate_experiment({"complex": {"points": str(points)}})
        assert "$.complex.radius" in _paths(info.value)

    def test_duplicate_stages(self):
        payload = {
            "complex": {"fixture": "hollow_triangle"},
            "stages": ["complex", "homology", "complex"],
        }
        with pytest.raises(ConfigError) as info:
            validate_experiment(payload)
        assert "$.stages" in _paths(info.value)

    def test_bad_group(self):
        payload = {"complex": {"fixture": "hollow_triangle"}, "group": {"kind": "u1", "rep_dim": 1}}
        with pytest.raises(ConfigError) as info:
            validate_experiment(payload)
        assert "$.group" in _paths(info.value)

    def test_covariance_must_match_representation(self):
        payload = {
            "complex": {"fixture": "hollow_triangle"},
            "group": {"kind": "so", "n": 3},
            "field": {"covariance": [[1.0, 0.0], [0.0, 1.0]], "mean": [0.0, 0.0]},
        }
        with pytest.raises(ConfigError) as info:
            validate_experiment(payload)
        assert {"$.field.covariance", "$.field.mean"} <= _paths(info.value)

    def test_covariance_must_be_square(self):
        payload = {
            "complex": {"fixture": "hollow_triangle"},
            "field": {"covariance": [[1.0, 0.0], [0.0]]},
        }
        with pytest.raises(ConfigError) as info:
            validate_experiment(payload)
        assert "$.field.covariance" in _paths(info.value)

    def test_natural_mode_needs_supported_group(self):
        payload = {
            "complex": {"fixture": "hollow_triangle"},
            "group": {"kind": "cyclic", "n": 2},
            "bundle": {"mode": "natural"},
        }
        with pytest.raises(ConfigError) as info:
            validate_experiment(payload)
        assert "$.bundle.mode" in _paths(info.value)

    def test_unknown_lie_family(self):
        payload = {"complex": {"fixture": "hollow_triangle"}, "stats": {"lie_family": "spin"}}
        with pytest.raises(ConfigError) as info:
            validate_experiment(payload)
        assert "$.stats.lie_family" in _paths(info.value)

    def test_stochastic_stage_needs_seed(self):
        payload = {"complex": {"fixture": "full_triangle"}, "stages": ["complex", "ising"]}
        with pytest.raises(ConfigError) as info:
            validate_experiment(payload)
        assert "$.seed" in _paths(info.value)
        payload["seed"] = 4
        assert validate_experiment(payload).seed == 4

    def test_every_problem_is_reported(self):
        payload = {
            "complex": {"fixture": "klein_bottle"},
            "stats": {"lie_family": "spin"},
            "stages": ["complex", "stats"],
        }
        with pytest.raises(ConfigError) as info:
            validate_experiment(payload)
        assert {"$.complex.fixture", "$.stats.lie_family", "$.seed"} <= _paths(info.value)
        assert str(info.value).startswith("invalid configuration")


class TestLoading:
    """Config files on disk"""

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError) as info:
            load_experiment_config(tmp_path / "absent.json")
        assert _paths(info.value) == {"$"}

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError) as info:
            load_experiment_config(path)
        assert _paths(info.value) == {"$"}

    def test_top_level_must_be_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError):
            load_experiment_config(path)

    def test_overrides_win(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"complex": {"fixture": "hollow_triangle"}, "seed": 1}))
        assert load_experiment_config(path).seed == 1
        assert load_experiment_config(path, {"seed": 9, "threads": None}).seed == 9
        assert load_experiment_config(path, {"threads": 2}).threads == 2


class TestPresets:
    @pytest.mark.parametrize("name", sorted(EXPERIMENT_PRESETS))
    def test_presets_validate(self, name):
        config = validate_experiment(experiment_preset(name))
        assert config.stages[0] is StageName.COMPLEX
        assert config.seed is not None

    def test_preset_is_a_copy(self):
        payload = experiment_preset("minimal")
        payload["seed"] = 99
        assert EXPERIMENT_PRESETS["minimal"]["seed"] == 0

    def test_unknown_preset(self):
        with pytest.raises(InputError):
            experiment_preset("everything")


class TestSettings:
    """Environment-driven settings"""

    def test_defaults(self, monkeypatch):
        for name in ("DEFAULT_SEED", "EXHAUSTIVE_SPIN_LIMIT", "PATH_WEIGHT_BASE", "MAX_THREADS"):
            monkeypatch.delenv(name, raising=False)
        settings = Settings(_env_file=None)
        assert settings.default_seed == 0
        assert settings.exhaustive_spin_limit == 20
        assert settings.path_weight_base == pytest.approx(2.0)
        assert settings.max_threads == 1

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("DEFAULT_SEED", "5")
        monkeypatch.setenv("HOLONOMY_PRODUCT_DEPTH", "3")
        settings = Settings(_env_file=None)
        assert settings.default_seed == 5
        assert settings.holonomy_product_depth == 3


class TestShippedConfigs:
    """Example configs under data/configs"""

    @pytest.mark.parametrize(
        "name", sorted(p.name for p in (REPO_ROOT / "data" / "configs").glob("*.json"))
    )
    def test_config_validates_and_plans(self, name, monkeypatch):
        from gaugeflow.workflow.pipeline import pipeline

        monkeypatch.chdir(REPO_ROOT)
        config = load_experiment_config(Path("data") / "configs" / name)
        assert pipeline.plan_problems(config) == []
        assert config.seed is not None
