import pytest

from src.domain import (
    FEATURE_CATALOGUE,
    FeatureKind,
    default_schema,
)
from src.domain.defaults import DEFAULT_CATEGORIES, category_names
from src.errors import DatasetError, ModelError


class TestFeatureKind:
    """Test parsing of feature kinds."""

    @pytest.mark.parametrize("text", ["increasing", "Increasing", "inc", " up "])
    def test_increasing_aliases(self, text):
        """Increasing labels and aliases parse."""
        assert FeatureKind.parse(text) is FeatureKind.INCREASING

    @pytest.mark.parametrize("text", ["v_shaped", "V-shaped", "vshaped", "v"])
    def test_v_shaped_aliases(self, text):
        """V-shaped labels and aliases parse."""
        assert FeatureKind.parse(text) is FeatureKind.V_SHAPED

    def test_unknown_kind(self):
        """Unknown labels raise ValueError."""
        with pytest.raises(ValueError):
            FeatureKind.parse("decreasing")


class TestDefaults:
    """Test the default catalogue."""

    def test_default_schema_kinds(self):
        """Default schema has three increasing and two v-shaped features."""
        schema = default_schema()
        assert schema.feature_ids == ("crowding", "noise", "smell", "brightness", "space")
        assert schema.kind_of("noise") is FeatureKind.INCREASING
        assert schema.kind_of("brightness") is FeatureKind.V_SHAPED
        assert schema.v_max == 5

    def test_temperature_not_in_default_schema(self):
        """Temperature is catalogued but excluded from the default schema."""
        assert FEATURE_CATALOGUE["temperature"] is FeatureKind.V_SHAPED
        assert "temperature" not in default_schema().feature_ids
        assert "temperature" in default_schema(features=["noise", "temperature"]).feature_ids

    def test_category_padding(self):
        """Counts beyond the questionnaire list are padded deterministically."""
        names = category_names(16)
        assert names[:14] == DEFAULT_CATEGORIES
        assert names[14:] == ["category_15", "category_16"]


class TestProfiles:
    """Test lookups on profiles and datasets."""

    def test_unknown_feature_kind_raises(self, schema):
        """kind_of rejects features outside the schema."""
        with pytest.raises(ModelError):
            schema.kind_of("smell")

    def test_missing_preference_raises(self, tiny_dataset):
        """A category without a declared preference raises ModelError."""
        with pytest.raises(ModelError):
            tiny_dataset.user("u1").preference("museums")

    def test_min_endpoint_defaults_to_one(self, tiny_dataset):
        """Increasing declarations have an implicit aversion of 1 at value 1."""
        user = tiny_dataset.user("u1")
        assert user.aversion("noise").min_endpoint == 1.0
        assert user.aversion("brightness").min_endpoint == 3

    def test_dataset_lookups(self, tiny_dataset):
        """Users and items are found by id; unknown ids raise DatasetError."""
        assert tiny_dataset.item("i2").category == "cafes"
        assert tiny_dataset.user("u2").group == "nt"
        with pytest.raises(DatasetError):
            tiny_dataset.item("x9")
        with pytest.raises(DatasetError):
            tiny_dataset.user("nobody")

    def test_summary_and_groups(self, tiny_dataset):
        """Summary counts users, items and ratings; groups are sorted."""
        summary = tiny_dataset.summary()
        assert summary["num_users"] == 2
        assert summary["num_items"] == 3
        assert summary["num_ratings"] == 5
        assert tiny_dataset.groups() == ["asd", "nt"]

    def test_with_ratings_copies(self, tiny_dataset):
        """with_ratings leaves the original profile untouched."""
        user = tiny_dataset.user("u2")
        changed = user.with_ratings({"i3": 1})
        assert dict(changed.ratings) == {"i3": 1}
        assert dict(user.ratings) == {"i1": 3, "i2": 4}
        assert changed.rated_items() == ["i3"]

    def test_item_vector_in_schema_order(self, tiny_dataset, schema):
        """Item vectors follow schema feature order."""
        assert list(tiny_dataset.item("i2").vector(schema)) == [5.0, 3.0]
