import time
from dataclasses import astuple

import pytest

from src.errors import EvaluationError
from src.evaluation import cross_validate, render_csv
from src.evaluation.cross_validation import split_eligible
from src.evaluation.report import METRICS
from src.model.aggregation import Measure
from src.model.predictor import AlgorithmConfig, AlphaObjective, Family, algorithm_matrix
from tests.conftest import make_user


def metric_values(row):
    return tuple(row.value(metric) for metric in METRICS) + (row.coverage,)


class TestEligibility:
    """Test the minimum-ratings filter."""

    def test_split(self, tiny_dataset):
        eligible, excluded = split_eligible(tiny_dataset.users, 3)
        assert [u.user_id for u in eligible] == ["u1"]
        assert excluded == ["u2"]

    def test_no_evaluable_users(self, tiny_dataset):
        with pytest.raises(EvaluationError, match="no evaluable users"):
            cross_validate(tiny_dataset, [AlgorithmConfig.parse("Pref-only")])

    def test_no_configs(self, tiny_dataset):
        with pytest.raises(EvaluationError):
            cross_validate(tiny_dataset, [])

    def test_sparse_users_are_excluded(self, synthetic):
        dataset, _ = synthetic(n_users=10, n_items=20, seed=2)
        sparse = make_user("zz", dataset.users[0].preferences,
                           {f: (d.a_at_max, d.a_at_min) for f, d in dataset.users[0].aversions.items()},
                           {"i01": 3, "i02": 4})
        report = cross_validate(dataset.with_users([*dataset.users, sparse]),
                                [AlgorithmConfig.parse("Pref-only")])
        assert report.excluded_users == ["zz"]
        assert "# excluded users (fewer than 5 ratings): zz" in render_csv(report)


class TestProtocol:
    """Test the shared-fold protocol."""

    def test_all_configs_see_identical_test_pairs(self, synthetic):
        dataset, _ = synthetic(n_users=15, n_items=25, seed=4)
        report = cross_validate(dataset, algorithm_matrix(alpha_grid_step=0.1))
        assert len(report.rows) == 13
        for fold in range(5):
            digests = report.test_pair_digests(fold)
            assert len(digests) == 13
            assert len(set(digests.values())) == 1

    def test_user_order_does_not_matter(self, synthetic):
        """Permuting the users gives a byte-identical report."""
        dataset, _ = synthetic(n_users=12, n_items=20, seed=6)
        configs = [AlgorithmConfig.parse(name) for name in ("Ind_Cos", "MC_Min", "Pref-only")]
        forward = cross_validate(dataset, configs)
        backward = cross_validate(dataset.with_users(reversed(dataset.users)), configs)
        assert render_csv(forward) == render_csv(backward)
        assert [astuple(f) for f in forward.folds] == [astuple(f) for f in backward.folds]

    def test_rows_ordered_by_map(self, synthetic):
        dataset, _ = synthetic(n_users=12, n_items=20, seed=8)
        report = cross_validate(dataset, algorithm_matrix(alpha_grid_step=0.25))
        maps = [row.map for row in report.rows]
        assert maps == sorted(maps, reverse=True)

    def test_full_coverage(self, synthetic):
        dataset, _ = synthetic(n_users=10, n_items=20, seed=10)
        report = cross_validate(dataset, [AlgorithmConfig.parse("Ind_Ave"), AlgorithmConfig.parse("MC_RMSD")])
        assert all(row.coverage == 1.0 for row in report.rows)

    def test_fold_count_and_pairs(self, synthetic):
        dataset, _ = synthetic(n_users=8, n_items=20, seed=12)
        report = cross_validate(dataset, [AlgorithmConfig.parse("C-only_Min")], n_folds=4)
        folds = report.folds
        assert [f.fold for f in folds] == [0, 1, 2, 3]
        assert sum(f.test_pairs for f in folds) == dataset.rating_count()


class TestOracleDatasets:
    """Cross-validation on datasets with a known latent alpha."""

    def test_ind_recovers_c_only(self, synthetic):
        """Ratings equal to comp: Ind over the grid {0, 1} matches C-only exactly."""
        dataset, _ = synthetic(alpha="point:1", n_users=15, n_items=30, exact_ratings=True, seed=14)
        ind = AlgorithmConfig(Family.IND, Measure.AVE, AlphaObjective.RMSE, 1.0)
        c_only = AlgorithmConfig(Family.C_ONLY, Measure.AVE)
        report = cross_validate(dataset, [ind, c_only])
        assert metric_values(report.row("Ind_Ave")) == metric_values(report.row("C-only_Ave"))
        assert report.row("C-only_Ave").mae == 0.0

    def test_pref_only_exact(self, synthetic):
        """Ratings equal to preferences: Pref-only has zero error."""
        dataset, _ = synthetic(alpha="point:0", n_users=10, n_items=20, exact_ratings=True, seed=16)
        report = cross_validate(dataset, [AlgorithmConfig.parse("Pref-only")])
        assert report.row("Pref-only").mae == 0.0
        assert report.row("Pref-only").rmse == 0.0

    def test_individualized_alpha_wins_on_map(self, synthetic):
        """Heterogeneous users: Ind_Ave has the best mean MAP over ten seeds."""
        names = ("Ind_Ave", "MC_Ave", "C-only_Ave", "Pref-only")
        configs = [AlgorithmConfig.parse(name) for name in names]
        totals = {name: 0.0 for name in names}
        start = time.perf_counter()
        for seed in range(10):
            dataset, _ = synthetic(alpha="uniform", n_users=100, n_items=50, noise_sigma=0.3, seed=seed)
            report = cross_validate(dataset, configs, seed=seed)
            for name in names:
                totals[name] += report.row(name).map / 10
        assert time.perf_counter() - start < 60.0
        assert totals["Ind_Ave"] > max(totals["MC_Ave"], totals["C-only_Ave"], totals["Pref-only"])
