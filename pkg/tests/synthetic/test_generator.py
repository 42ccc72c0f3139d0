import math

import numpy as np
import pytest

from src.errors import ConfigError
from src.model.aggregation import Measure
from src.model.predictor import Scorer
from src.parser import load_dataset
from src.synthetic import AlphaDistribution, SyntheticSpec, is_identifiable, write_synthetic
from tests.conftest import make_user


class TestAlphaDistribution:
    """Test parsing and sampling of latent alpha distributions."""

    def test_parse(self):
        assert AlphaDistribution.parse("uniform").kind == "uniform"
        assert AlphaDistribution.parse("point:0.3").values == (0.3,)
        assert AlphaDistribution.parse("choice:0,0.5,1").values == (0.0, 0.5, 1.0)
        assert str(AlphaDistribution.parse("point:1")) == "point:1.0"

    @pytest.mark.parametrize("text", ["gaussian", "point:", "point:0.1,0.2", "choice:0,1.5", "point:x"])
    def test_invalid(self, text):
        with pytest.raises(ConfigError):
            AlphaDistribution.parse(text)

    def test_choice_samples_from_values(self):
        rng = np.random.default_rng(0)
        distribution = AlphaDistribution.parse("choice:0,0.25,1")
        assert {distribution.sample(rng) for _ in range(200)} == {0.0, 0.25, 1.0}


class TestSyntheticSpec:
    """Test SyntheticSpec validation."""

    @pytest.mark.parametrize("overrides", [{"n_users": 0}, {"density": 0.0}, {"density": 1.2},
                                           {"noise_sigma": -0.1}, {"min_ratings": -1}])
    def test_invalid(self, overrides):
        with pytest.raises(ConfigError):
            SyntheticSpec(**overrides)


class TestGeneration:
    """Test generated populations."""

    def test_deterministic(self, synthetic):
        first, first_truth = synthetic(n_users=20, n_items=30, noise_sigma=0.4, seed=9)
        second, second_truth = synthetic(n_users=20, n_items=30, noise_sigma=0.4, seed=9)
        assert first == second
        assert dict(first_truth.alphas) == dict(second_truth.alphas)
        other, _ = synthetic(n_users=20, n_items=30, noise_sigma=0.4, seed=10)
        assert other != first

    def test_noiseless_alpha_one_is_rounded_comp(self, synthetic):
        """sigma = 0 and alpha = 1: every rating is comp rounded half up."""
        dataset, _ = synthetic(alpha="point:1", n_users=15, n_items=30, seed=1)
        scorer = Scorer(dataset.schema)
        for user in dataset.users:
            for item_id, rating in user.ratings.items():
                comp = scorer.compatibility(user, dataset.item(item_id), Measure.AVE)
                assert rating == math.floor(comp + 0.5)

    def test_ratings_are_likert(self, synthetic):
        dataset, _ = synthetic(n_users=20, n_items=30, noise_sigma=1.0, seed=2)
        values = {r for user in dataset.users for r in user.ratings.values()}
        assert values <= {1.0, 2.0, 3.0, 4.0, 5.0}

    def test_exact_ratings_match_latent_truth(self, synthetic):
        dataset, truth = synthetic(n_users=10, n_items=20, exact_ratings=True, seed=3)
        for user in dataset.users:
            for item_id, rating in user.ratings.items():
                assert rating == truth.noiseless[(user.user_id, item_id)]
        assert len(truth.noiseless) == 10 * 20

    def test_density(self, synthetic):
        """Density 0.6 on 50 items gives about 30 ratings per user."""
        dataset, _ = synthetic(n_users=100, n_items=50, density=0.6, seed=4)
        mean = dataset.rating_count() / len(dataset.users)
        assert 27 <= mean <= 33

    def test_minimum_ratings(self, synthetic):
        dataset, _ = synthetic(n_users=30, n_items=20, density=0.05, min_ratings=5, seed=5)
        assert all(len(user.ratings) >= 5 for user in dataset.users)

    def test_profiles(self, synthetic):
        dataset, _ = synthetic(n_users=5, n_items=40, n_categories=3, group="asd", seed=6)
        assert len(dataset.categories) == 3
        for user in dataset.users:
            assert user.group == "asd"
            assert set(user.preferences) == set(dataset.categories.sorted())
            assert all(float(p).is_integer() for p in user.preferences.values())
        for item in dataset.items:
            assert all(1.0 <= v <= 5.0 for v in item.feature_values.values())
            assert all(round(v, 2) == v for v in item.feature_values.values())


class TestIdentifiability:
    """Test the identifiability check."""

    def test_constant_comp_equal_to_preference(self, tiny_dataset):
        user = make_user("u", {"parks": 5, "cafes": 5}, {"noise": (1, None), "brightness": (1, 1)},
                         {"i1": 5, "i2": 5, "i3": 5})
        assert not is_identifiable(user, tiny_dataset)

    def test_identifiable(self, tiny_dataset):
        assert is_identifiable(tiny_dataset.user("u1"), tiny_dataset)


class TestWriting:
    """Test writing a synthetic dataset with its latent truth."""

    def test_write_and_reload(self, synthetic, tmp_path):
        dataset, truth = synthetic(n_users=8, n_items=12, seed=7)
        written = write_synthetic(dataset, truth, tmp_path)
        assert [p.name for p in written][-2:] == ["latent_alpha.csv", "latent_ratings.csv"]
        assert load_dataset(tmp_path) == dataset
        alpha_lines = (tmp_path / "latent_alpha.csv").read_text(encoding="utf-8").splitlines()
        assert alpha_lines[0] == "user_id,alpha"
        assert len(alpha_lines) == 9

    def test_byte_identical_files(self, synthetic, tmp_path):
        for name in ("a", "b"):
            dataset, truth = synthetic(n_users=6, n_items=10, seed=8)
            write_synthetic(dataset, truth, tmp_path / name)
        for path in sorted((tmp_path / "a").iterdir()):
            assert path.read_bytes() == (tmp_path / "b" / path.name).read_bytes()
