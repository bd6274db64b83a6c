import json

import numpy as np
import pandas as pd
import pytest

from shubinlab import tables
from shubinlab.exceptions import ShubinLabConfigError
from shubinlab.gridfield import Grid1D


@pytest.fixture
def tiny_grid() -> Grid1D:
    return Grid1D(N=4, L=2.0)


class TestPhaseFrame:
    def test_long_form(self, tiny_grid):
        table = np.arange(16).reshape(4, 4) * (1 + 1j)
        frame = tables.phase_frame(table, tiny_grid)
        assert list(frame.columns) == ["x", "p", "re", "im"]
        assert len(frame) == 16
        # rows follow x, columns follow p
        row = frame.iloc[1]
        assert row["x"] == tiny_grid.x[0]
        assert row["p"] == tiny_grid.p[1]
        assert row["re"] == 1.0
        assert row["im"] == 1.0

    def test_csv_roundtrip_precision(self, tiny_grid, tmp_path):
        table = np.full((4, 4), 1 / 3 + 2j / 7)
        frame = tables.phase_frame(table, tiny_grid)
        path = tables.write_csv(frame, tmp_path / "w" / "t.csv")
        frame = pd.read_csv(path, float_precision="round_trip")
        assert frame["re"].iloc[0] == 1 / 3
        assert frame["im"].iloc[0] == 2 / 7


class TestJson:
    @pytest.mark.parametrize(
        "value,expected",
        [
            (1 + 2j, [1.0, 2.0]),
            (np.complex128(-1j), [0.0, -1.0]),
            (np.float64(0.5), 0.5),
            (np.int64(3), 3),
            (np.array([1.0, 2.0]), [1.0, 2.0]),
            ({1: (np.int64(2), "a")}, {"1": [2, "a"]}),
        ],
    )
    def test_to_jsonable(self, value, expected):
        assert tables.to_jsonable(value) == expected

    def test_write_json(self, tmp_path):
        path = tables.write_json({"b": 1, "a": 0.5j}, tmp_path / "out.json")
        text = path.read_text()
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": [0.0, 0.5], "b": 1}


class TestWriteRows:
    ROWS = [{"m": 0, "l": 1, "weyl": "P"}, {"m": 1, "l": 0, "weyl": "X"}]

    def test_csv(self, tmp_path):
        path = tables.write_rows(self.ROWS, tmp_path / "ordering_table", "csv")
        assert path.name == "ordering_table.csv"
        frame = pd.read_csv(path)
        assert list(frame["weyl"]) == ["P", "X"]

    def test_json(self, tmp_path):
        path = tables.write_rows(self.ROWS, tmp_path / "ordering_table", "json")
        assert path.suffix == ".json"
        assert json.loads(path.read_text()) == self.ROWS

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ShubinLabConfigError):
            tables.write_rows(self.ROWS, tmp_path / "rows", "xml")
