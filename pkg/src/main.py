import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

import pandas as pd

from src.config import RunConfig, load_config_file, resolve_config
from src.domain.defaults import default_schema
from src.domain.models import Dataset
from src.errors import ConfigError, DatasetError, DatasetValidationError, EvaluationError, RecommenderError
from src.evaluation import cross_validate, render, split_eligible, write_report
from src.model.aggregation import Measure
from src.model.predictor import AlgorithmConfig, Family, FittedModel, Scorer, alpha_identifiable, fit_alpha, top_n
from src.parser import load_dataset, read_schema
from src.synthetic import AlphaDistribution, SyntheticSpec, generate_synthetic, write_synthetic
from src.utils.hashing import hash_dataset


# Configure logging
logger = logging.getLogger(__name__)

DEFAULT_ALGORITHM = "Ind_Cos"


def setup_logging(log_file: Path = None, level: str = "INFO"):
    """
    Configure logging to both file and console.

    Args:
        log_file: Path to log file (optional)
        level: Logging level (DEBUG, INFO, WARNING, ERROR)
    """
    # Create formatters
    detailed_formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    simple_formatter = logging.Formatter(
        '%(levelname)s: %(message)s'
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG if log_file else getattr(logging, level.upper()))
    root_logger.handlers = []

    # Console handler on stderr; stdout carries command output
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level.upper()))
    console_handler.setFormatter(simple_formatter)
    root_logger.addHandler(console_handler)

    # File handler (detailed format)
    if log_file:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file, mode='a')
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(detailed_formatter)
        root_logger.addHandler(file_handler)

        logger.info(f"Logging to file: {log_file}")

    return root_logger


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="YAML config file (flags override it)")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR (default: INFO)")
    parser.add_argument("--log-file", type=Path, help="Also log to this file, with timestamps")


def _add_dataset_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dataset-dir", type=Path, help="Directory with schema/items/users/ratings files")
    parser.add_argument("--schema", dest="schema_path", type=Path, help="Schema file overriding the dataset's")
    parser.add_argument("--allow-fractional", action="store_true", default=None,
                        help="Accept non-integer ratings, preferences and aversions")


def _add_model_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--top-n", type=int, help="Recommendation list length (default: 5)")
    parser.add_argument("--relevance-threshold", type=float, help="Minimum relevant rating (default: 4)")
    parser.add_argument("--alpha-objective", choices=["map", "rmse"], help="Alpha search objective (default: map)")
    parser.add_argument("--alpha-step", type=float, help="Alpha grid step (default: 0.01)")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the validate, recommend, fit-alpha, evaluate and synth subcommands."""
    parser = argparse.ArgumentParser(
        prog="sensorec",
        description="Top-N place recommendation for users with sensory aversions.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate_cmd = commands.add_parser("validate", help="Check a dataset directory")
    _add_dataset_options(validate_cmd)
    _add_common_options(validate_cmd)

    recommend_cmd = commands.add_parser("recommend", help="Top-N places for one user")
    _add_dataset_options(recommend_cmd)
    _add_model_options(recommend_cmd)
    _add_common_options(recommend_cmd)
    recommend_cmd.add_argument("--user", required=True, help="User id")
    recommend_cmd.add_argument("--algorithm", default=DEFAULT_ALGORITHM,
                               help=f"Algorithm, e.g. Ind_Cos, MC_Ave, Pref-only (default: {DEFAULT_ALGORITHM})")
    recommend_cmd.add_argument("--exclude-rated", action="store_true",
                               help="Only rank places the user has not rated")

    fit_cmd = commands.add_parser("fit-alpha", help="Per-user alpha table on all ratings")
    _add_dataset_options(fit_cmd)
    _add_model_options(fit_cmd)
    _add_common_options(fit_cmd)
    fit_cmd.add_argument("--algorithm", default=DEFAULT_ALGORITHM, help="An Ind algorithm (default: Ind_Cos)")
    fit_cmd.add_argument("--output", type=Path, help="Write the table here instead of stdout")

    evaluate_cmd = commands.add_parser("evaluate", help="Cross-validate all algorithm configurations")
    _add_dataset_options(evaluate_cmd)
    _add_model_options(evaluate_cmd)
    _add_common_options(evaluate_cmd)
    evaluate_cmd.add_argument("--folds", type=int, help="Number of folds (default: 5)")
    evaluate_cmd.add_argument("--seed", type=int, help="Fold seed (default: 42)")
    evaluate_cmd.add_argument("--output", type=Path, help="Report file (per-fold detail goes next to it)")
    evaluate_cmd.add_argument("--format", choices=["csv", "table"], help="Report format (default: table)")
    evaluate_cmd.add_argument("--group", help="Evaluate one user group only")
    evaluate_cmd.add_argument("--by-group", action="store_true", default=None,
                              help="One report per user group")
    evaluate_cmd.add_argument("--algorithms", help="Comma-separated subset, e.g. Ind_Ave,MC_Ave")

    synth_cmd = commands.add_parser("synth", help="Generate a synthetic dataset with latent truth")
    _add_common_options(synth_cmd)
    synth_cmd.add_argument("--out-dir", type=Path, required=True, help="Directory to write")
    synth_cmd.add_argument("--schema", dest="schema_path", type=Path,
                           help="Feature schema file (default: five-feature schema)")
    synth_cmd.add_argument("--users", type=int, default=100, help="Number of users (default: 100)")
    synth_cmd.add_argument("--items", type=int, default=50, help="Number of places (default: 50)")
    synth_cmd.add_argument("--categories", type=int, default=14, help="Number of categories (default: 14)")
    synth_cmd.add_argument("--alpha", default="uniform",
                           help="Latent alpha: uniform, point:<a> or choice:<a>,<b>,... (default: uniform)")
    synth_cmd.add_argument("--noise", type=float, default=0.0, help="Rating noise sigma (default: 0)")
    synth_cmd.add_argument("--density", type=float, default=0.7, help="Share of places each user rated (default: 0.7)")
    synth_cmd.add_argument("--min-ratings", type=int, default=5, help="Ratings per user at least (default: 5)")
    synth_cmd.add_argument("--measure", default="Ave", help="Generating measure: Min, Ave, Cos, RMSD (default: Ave)")
    synth_cmd.add_argument("--exact-ratings", action="store_true", help="Keep unrounded ratings")
    synth_cmd.add_argument("--group", help="Group label for every user")
    synth_cmd.add_argument("--seed", type=int, default=42, help="Generator seed (default: 42)")
    synth_cmd.add_argument("--data-format", choices=["csv", "json"], default="csv", help="File format (default: csv)")

    return parser


_CONFIG_FLAGS = (
    "dataset_dir", "schema_path", "allow_fractional", "top_n", "relevance_threshold",
    "alpha_objective", "alpha_step", "folds", "seed", "output", "format", "group",
    "by_group", "algorithms", "log_level", "log_file",
)


def _resolve(args: argparse.Namespace) -> RunConfig:
    file_values = load_config_file(args.config) if getattr(args, "config", None) else {}
    cli_values = {name: getattr(args, name) for name in _CONFIG_FLAGS if hasattr(args, name)}
    return resolve_config(cli_values, file_values)


def _load(config: RunConfig) -> Dataset:
    if config.dataset_dir is None:
        raise ConfigError("--dataset-dir is required (or dataset_dir in the config file)")
    return load_dataset(config.dataset_dir, config.schema_path, integer_values=not config.allow_fractional)


def cmd_validate(args: argparse.Namespace, config: RunConfig) -> int:
    try:
        dataset = _load(config)
    except DatasetValidationError as e:
        for violation in e.violations:
            print(violation)
        logger.error(f"{len(e.violations)} violations in {config.dataset_dir}")
        return 1
    summary = dataset.summary()
    print(", ".join(f"{key}={value}" for key, value in summary.items()))
    logger.info(f"{config.dataset_dir} is valid")
    return 0


def _algorithm(name: str, config: RunConfig) -> AlgorithmConfig:
    try:
        return AlgorithmConfig.parse(name, config.objective, config.alpha_step)
    except ValueError as e:
        raise ConfigError(str(e)) from None


def _fit_user_model(user, dataset: Dataset, algorithm: AlgorithmConfig, config: RunConfig,
                    scorer: Scorer) -> FittedModel:
    if algorithm.family is not Family.IND:
        return FittedModel(algorithm)
    alpha = fit_alpha(user, dict(user.ratings), dataset.items_by_id, dataset.schema, algorithm,
                      config.top_n, config.relevance_threshold, scorer)
    return FittedModel(algorithm, {user.user_id: alpha})


def cmd_recommend(args: argparse.Namespace, config: RunConfig) -> int:
    dataset = _load(config)
    user = dataset.user(args.user)
    algorithm = _algorithm(args.algorithm, config)
    scorer = Scorer(dataset.schema)
    model = _fit_user_model(user, dataset, algorithm, config, scorer)

    candidates = [item for item in dataset.items if not (args.exclude_rated and item.item_id in user.ratings)]
    ranked = top_n(user, candidates, dataset.schema, model, config.top_n, scorer)
    alpha = model.alpha_for(user.user_id)
    logger.info(f"{algorithm.name} for {user.user_id}: {len(candidates)} candidates"
                + (f", alpha={alpha:.2f}" if alpha is not None else ""))
    for item_id, score in ranked:
        print(f"{item_id},{score:.6f}")
    return 0


def cmd_fit_alpha(args: argparse.Namespace, config: RunConfig) -> int:
    dataset = _load(config)
    algorithm = _algorithm(args.algorithm, config)
    if algorithm.family is not Family.IND:
        raise ConfigError(f"fit-alpha needs an Ind algorithm, got {algorithm.name}")
    scorer = Scorer(dataset.schema)

    records = []
    for user in sorted(dataset.users, key=lambda u: u.user_id):
        if not user.ratings:
            logger.warning(f"Skipping {user.user_id}: no ratings")
            continue
        model = _fit_user_model(user, dataset, algorithm, config, scorer)
        alpha = model.alpha_for(user.user_id)
        identifiable = alpha_identifiable(user, user.ratings, dataset.items_by_id, dataset.schema,
                                          algorithm, alpha, scorer)
        records.append({"user_id": user.user_id, "alpha": alpha, "ratings": len(user.ratings),
                        "identifiable": identifiable})

    flagged = sum(not r["identifiable"] for r in records)
    if flagged:
        logger.info(f"{flagged} of {len(records)} users have an alpha the ratings do not pin to one grid step")
    frame = pd.DataFrame.from_records(records, columns=["user_id", "alpha", "ratings", "identifiable"])
    text = frame.to_csv(index=False, float_format="%.2f", lineterminator="\n")
    if args.output:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(text, encoding="utf-8")
        logger.info(f"Alpha table written to {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _group_output(output: Path, group: str) -> Path:
    return output.with_name(f"{output.stem}.{group}{output.suffix}")


def _evaluate_users(dataset: Dataset, config: RunConfig, group: Optional[str], output: Optional[Path]) -> None:
    if group is not None:
        members = [u for u in dataset.users if u.group == group]
        if not members:
            raise DatasetError(f"No users in group {group!r} (groups: {', '.join(dataset.groups()) or 'none'})")
        dataset = dataset.with_users(members)

    header = config.describe()
    if group is not None:
        header = [(key, group if key == "group" else value) for key, value in header]
    header.append(("dataset_sha256", hash_dataset(dataset)))

    report = cross_validate(
        dataset,
        config.algorithm_configs(),
        top_n=config.top_n,
        relevance_threshold=config.relevance_threshold,
        n_folds=config.folds,
        seed=config.seed,
        header=header,
    )
    if output is not None:
        write_report(report, output, config.format)
    else:
        sys.stdout.write(render(report, config.format))


def cmd_evaluate(args: argparse.Namespace, config: RunConfig) -> int:
    dataset = _load(config)
    logger.info("Resolved configuration: " + ", ".join(f"{k}={v}" for k, v in config.describe()))
    if config.by_group:
        groups = dataset.groups()
        if not groups:
            raise DatasetError("--by-group needs a users file with a 'group' column")
        # fail before any report is written
        empty = [g for g in groups
                 if not split_eligible([u for u in dataset.users if u.group == g], config.folds)[0]]
        if empty:
            raise EvaluationError(f"no evaluable users in group(s) {', '.join(empty)}: "
                                  f"every member has fewer than {config.folds} ratings")
        for group in groups:
            output = _group_output(config.output, group) if config.output else None
            _evaluate_users(dataset, config, group, output)
    else:
        _evaluate_users(dataset, config, config.group, config.output)
    return 0


def cmd_synth(args: argparse.Namespace, config: RunConfig) -> int:
    try:
        measure = Measure.parse(args.measure)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    schema = read_schema(config.schema_path) if config.schema_path else default_schema()
    spec = SyntheticSpec(
        n_users=args.users,
        n_items=args.items,
        n_categories=args.categories,
        alpha=AlphaDistribution.parse(args.alpha),
        noise_sigma=args.noise,
        density=args.density,
        seed=args.seed,
        measure=measure,
        exact_ratings=args.exact_ratings,
        min_ratings=args.min_ratings,
        group=args.group,
        schema=schema,
    )
    dataset, truth = generate_synthetic(spec)
    written = write_synthetic(dataset, truth, args.out_dir, args.data_format)
    for path in written:
        print(path)
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], int]] = {
    "validate": cmd_validate,
    "recommend": cmd_recommend,
    "fit-alpha": cmd_fit_alpha,
    "evaluate": cmd_evaluate,
    "synth": cmd_synth,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = _resolve(args)
    except ConfigError as e:
        setup_logging()
        logger.error(str(e))
        return 2

    setup_logging(log_file=config.log_file, level=config.log_level)

    try:
        return COMMANDS[args.command](args, config)
    except RecommenderError as e:
        logger.error(str(e))
        return 2
    except OSError as e:
        logger.error(f"{e.filename or 'I/O error'}: {e.strerror}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
