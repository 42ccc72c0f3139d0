import pytest

from src.errors import DatasetParseError
from src.parser.file_loader import cell_number, find_table, format_number, is_missing, load_table, write_table
from src.parser.schemas import USERS_TABLE, aversion_column, check_columns, pref_column


class TestCells:
    """Test cell helpers."""

    def test_missing_values(self):
        assert is_missing("") and is_missing("  ") and is_missing(None) and is_missing(float("nan"))
        assert not is_missing("0")

    def test_cell_number_error_names_row_and_column(self, tmp_path):
        with pytest.raises(DatasetParseError, match="row 3: column 'noise'"):
            cell_number("loud", tmp_path / "items.csv", 3, "noise")

    def test_format_number(self):
        assert format_number(4.0) == 4 and isinstance(format_number(4.0), int)
        assert format_number(2.35) == 2.35


class TestTables:
    """Test table discovery, loading and writing."""

    def test_find_table(self, tmp_path):
        assert find_table(tmp_path, "schema", required=False) is None
        with pytest.raises(DatasetParseError):
            find_table(tmp_path, "items")
        (tmp_path / "items.json").write_text("[]", encoding="utf-8")
        assert find_table(tmp_path, "items") == tmp_path / "items.json"

    def test_unsupported_suffix(self, tmp_path):
        path = tmp_path / "items.xlsx"
        path.write_text("x", encoding="utf-8")
        with pytest.raises(DatasetParseError, match="unsupported"):
            load_table(path)

    def test_csv_cells_stay_text(self, tmp_path):
        path = write_table([{"user_id": "007", "rating": None}], ["user_id", "rating"], tmp_path / "r.csv")
        frame = load_table(path)
        assert frame.loc[0, "user_id"] == "007"
        assert frame.loc[0, "rating"] == ""

    def test_json_records(self, tmp_path):
        path = write_table([{"item_id": "i1", "noise": 2.25}], ["item_id", "noise"], tmp_path / "items.json")
        frame = load_table(path)
        assert list(frame.columns) == ["item_id", "noise"]
        assert frame.loc[0, "noise"] == 2.25


class TestColumnSchemas:
    """Test column naming and checks."""

    def test_dynamic_columns(self):
        assert aversion_column("noise", "max") == "aversion:noise:max"
        assert pref_column("nature") == "pref:nature"
        assert USERS_TABLE.is_known("pref:nature") and USERS_TABLE.is_known("group")
        assert not USERS_TABLE.is_known("age")

    def test_missing_column(self, tmp_path):
        frame = load_table(write_table([{"user_id": "u1"}], ["user_id"], tmp_path / "users.csv"))
        with pytest.raises(DatasetParseError, match="aversion:noise:max"):
            check_columns(frame, USERS_TABLE, "users.csv", extra_required=["aversion:noise:max"])
