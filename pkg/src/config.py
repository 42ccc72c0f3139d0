"""
Run configuration.

Settings come from three layers, highest first: command-line flags, an
optional YAML config file, built-in defaults. ``resolve_config`` merges
them and validates the result.

Example config file:

    dataset_dir: data/sample
    folds: 5
    top_n: 5
    alpha_objective: map
    alpha_step: 0.01
    seed: 42
"""

import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import yaml

from .domain.defaults import ScaleConstants
from .errors import ConfigError, ModelError
from .model.predictor import AlgorithmConfig, AlphaObjective, algorithm_matrix, alpha_grid

logger = logging.getLogger(__name__)

FORMATS = ("csv", "table")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings of one CLI run."""
    dataset_dir: Optional[Path] = None
    schema_path: Optional[Path] = None
    folds: int = ScaleConstants.DEFAULT_FOLDS
    top_n: int = ScaleConstants.DEFAULT_TOP_N
    relevance_threshold: float = ScaleConstants.DEFAULT_RELEVANCE_THRESHOLD
    alpha_objective: str = AlphaObjective.MAP.value
    alpha_step: float = ScaleConstants.DEFAULT_ALPHA_STEP
    seed: int = ScaleConstants.DEFAULT_SEED
    output: Optional[Path] = None
    format: str = "table"
    group: Optional[str] = None
    by_group: bool = False
    algorithms: Optional[Tuple[str, ...]] = None
    allow_fractional: bool = False
    log_level: str = "INFO"
    log_file: Optional[Path] = None

    @property
    def objective(self) -> AlphaObjective:
        return AlphaObjective(self.alpha_objective)

    def algorithm_configs(self) -> List[AlgorithmConfig]:
        """Configurations to run: the named ones, or the full 13-configuration matrix."""
        if not self.algorithms:
            return algorithm_matrix(self.objective, self.alpha_step)
        return [AlgorithmConfig.parse(name, self.objective, self.alpha_step) for name in self.algorithms]

    def describe(self) -> List[Tuple[str, str]]:
        """Settings that determine a report, in a stable order."""
        return [
            ("dataset_dir", str(self.dataset_dir)),
            ("schema", str(self.schema_path) if self.schema_path else "dataset"),
            ("folds", str(self.folds)),
            ("top_n", str(self.top_n)),
            ("relevance_threshold", repr(float(self.relevance_threshold))),
            ("alpha_objective", self.alpha_objective),
            ("alpha_step", repr(float(self.alpha_step))),
            ("seed", str(self.seed)),
            ("group", self.group or "all"),
            ("algorithms", ",".join(self.algorithms) if self.algorithms else "all"),
        ]


_FIELD_NAMES = {f.name for f in fields(RunConfig)}
_PATH_FIELDS = {"dataset_dir", "schema_path", "output", "log_file"}
_INT_FIELDS = {"folds", "top_n", "seed"}
_FLOAT_FIELDS = {"relevance_threshold", "alpha_step"}
_BOOL_FIELDS = {"by_group", "allow_fractional"}


def _normalize_key(key: Any) -> str:
    name = str(key).strip().replace("-", "_")
    return "schema_path" if name == "schema" else name


def load_config_file(path: Path) -> Dict[str, Any]:
    """
    Read a YAML config file into a mapping of RunConfig field names.

    Raises:
        ConfigError: unreadable file, non-mapping content or unknown keys
    """
    path = Path(path)
    try:
        content = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e.strerror}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Config file {path} is not valid YAML: {e}") from e

    if content is None:
        return {}
    if not isinstance(content, dict):
        raise ConfigError(f"Config file {path} must contain a mapping, got {type(content).__name__}")

    values = {_normalize_key(key): value for key, value in content.items()}
    unknown = sorted(set(values) - _FIELD_NAMES)
    if unknown:
        raise ConfigError(f"Unknown key {unknown[0]!r} in config file {path}")
    logger.debug(f"Loaded config file {path}: {sorted(values)}")
    return values


def _coerce(name: str, value: Any) -> Any:
    if value is None:
        return None
    try:
        if name in _PATH_FIELDS:
            return Path(value)
        if name in _INT_FIELDS:
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError
            return int(value)
        if name in _FLOAT_FIELDS:
            if isinstance(value, bool):
                raise ValueError
            return float(value)
        if name in _BOOL_FIELDS:
            if not isinstance(value, bool):
                raise ValueError
            return value
        if name == "algorithms":
            names = value.split(",") if isinstance(value, str) else list(value)
            return tuple(str(n).strip() for n in names if str(n).strip())
        return str(value).strip()
    except (TypeError, ValueError):
        raise ConfigError(f"Invalid value for {name}: {value!r}") from None


def _check(config: RunConfig) -> RunConfig:
    if config.folds < 2:
        raise ConfigError(f"folds must be at least 2, got {config.folds}")
    if config.top_n < 1:
        raise ConfigError(f"top_n must be at least 1, got {config.top_n}")
    if config.format not in FORMATS:
        raise ConfigError(f"format must be one of {', '.join(FORMATS)}, got {config.format!r}")
    if config.log_level.upper() not in LOG_LEVELS:
        raise ConfigError(f"log_level must be one of {', '.join(LOG_LEVELS)}, got {config.log_level!r}")
    if config.group and config.by_group:
        raise ConfigError("group and by_group cannot be combined")
    try:
        AlphaObjective.parse(config.alpha_objective)
        alpha_grid(config.alpha_step)
        config.algorithm_configs()
    except (ModelError, ValueError) as e:
        raise ConfigError(str(e)) from None
    return config


def resolve_config(cli_values: Optional[Mapping[str, Any]] = None,
                   file_values: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """
    Merge flags over file values over defaults.

    Args:
        cli_values: Flag values; None means the flag was not given
        file_values: Values from load_config_file

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: unknown key or invalid value
    """
    merged: Dict[str, Any] = {}
    for layer in (file_values or {}, cli_values or {}):
        for key, value in layer.items():
            name = _normalize_key(key)
            if name not in _FIELD_NAMES:
                raise ConfigError(f"Unknown setting {key!r}")
            if value is not None:
                merged[name] = _coerce(name, value)

    if "alpha_objective" in merged:
        merged["alpha_objective"] = merged["alpha_objective"].lower()
    if "log_level" in merged:
        merged["log_level"] = merged["log_level"].upper()
    return _check(replace(RunConfig(), **merged))
