from pathlib import Path

import pytest

from src.config import RunConfig, load_config_file, resolve_config
from src.errors import ConfigError
from src.model.predictor import AlphaObjective


class TestResolveConfig:
    """Test layering of flags, file values and defaults."""

    def test_defaults(self):
        config = resolve_config()
        assert config == RunConfig()
        assert config.folds == 5 and config.top_n == 5 and config.seed == 42
        assert config.relevance_threshold == 4
        assert config.objective is AlphaObjective.MAP
        assert len(config.algorithm_configs()) == 13

    def test_flags_override_file(self):
        config = resolve_config({"top_n": 3, "seed": None}, {"top_n": 10, "seed": 7})
        assert config.top_n == 3
        assert config.seed == 7

    def test_coercion(self):
        config = resolve_config({"dataset-dir": "data/sample", "alpha_objective": "RMSE",
                                 "algorithms": "Ind_Ave, MC_Ave", "log_level": "debug"})
        assert config.dataset_dir == Path("data/sample")
        assert config.objective is AlphaObjective.RMSE
        assert config.algorithms == ("Ind_Ave", "MC_Ave")
        assert [c.name for c in config.algorithm_configs()] == ["Ind_Ave", "MC_Ave"]
        assert config.log_level == "DEBUG"

    @pytest.mark.parametrize("values", [
        {"folds": 1},
        {"top_n": 0},
        {"format": "html"},
        {"alpha_step": 0.3},
        {"alpha_objective": "mae"},
        {"algorithms": "Best_Ave"},
        {"folds": "five"},
        {"seed": 1.5},
        {"by_group": "yes"},
        {"group": "asd", "by_group": True},
        {"colour": "blue"},
    ])
    def test_invalid(self, values):
        with pytest.raises(ConfigError):
            resolve_config(values)

    def test_describe_is_stable(self):
        config = resolve_config({"dataset_dir": "data/sample"})
        described = dict(config.describe())
        assert described["folds"] == "5"
        assert described["alpha_step"] == "0.01"
        assert described["algorithms"] == "all"
        assert described["group"] == "all"


class TestConfigFile:
    """Test YAML config files."""

    def test_load(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("dataset-dir: data/sample\nschema: schema.csv\nfolds: 4\n", encoding="utf-8")
        values = load_config_file(path)
        assert values == {"dataset_dir": "data/sample", "schema_path": "schema.csv", "folds": 4}
        assert resolve_config({}, values).folds == 4

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert load_config_file(path) == {}

    @pytest.mark.parametrize("text", ["- a\n- b\n", "folds: [1\n", "colour: blue\n"])
    def test_invalid(self, tmp_path, text):
        path = tmp_path / "bad.yaml"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config_file(tmp_path / "absent.yaml")
