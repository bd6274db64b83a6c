import pytest

from shubinlab.exceptions import ShubinLabConfigError
from shubinlab.gridfield import Grid1D
from shubinlab.models import RunConfig
from shubinlab.models.run_config import read_key_value_file


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig.from_mapping({})
        assert config.N == 256
        assert config.L == 16.0
        assert config.tau_list == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert config.seed == 7
        assert config.format == "json"
        assert config.grid == Grid1D()

    def test_none_does_not_override(self):
        config = RunConfig.from_mapping({"N": None, "seed": 3})
        assert config.N == 256
        assert config.seed == 3

    @pytest.mark.parametrize(
        "taus,expected",
        [
            ("0, 0.5, 1", [0.0, 0.5, 1.0]),
            ("0.25 0.75", [0.25, 0.75]),
            ("0.3,", [0.3]),
            ([0.1, 0.9], [0.1, 0.9]),
        ],
    )
    def test_tau_list(self, taus, expected):
        assert RunConfig.from_mapping({"tau_list": taus}).tau_list == expected

    def test_strings_are_converted(self):
        config = RunConfig.from_mapping({"N": "64", "L": "8", "seed": "11"})
        assert config.N == 64
        assert config.L == 8.0
        assert config.seed == 11

    @pytest.mark.parametrize(
        "data",
        [
            {"N": 100},
            {"N": 1},
            {"L": 0},
            {"L": -2.0},
            {"tau_list": ""},
            {"tau_list": "0.5, abc"},
            {"format": "xml"},
            {"seed": "seven"},
        ],
    )
    def test_invalid(self, data):
        with pytest.raises(ShubinLabConfigError):
            RunConfig.from_mapping(data)

    def test_dump(self):
        data = RunConfig(N=64, L=8.0, tau_list=[0.5]).dump()
        assert data["N"] == 64
        assert data["tau_list"] == [0.5]
        assert data["format"] == "json"

    def test_repr(self):
        assert repr(RunConfig(N=64, L=8.0, tau_list=[0.5], seed=1)) == (
            "RunConfig(N=64, L=8.0, tau_list=[0.5], seed=1)"
        )


class TestConfigFile:
    def test_from_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "# small grid\nN = 64\nL = 8.0  # self-dual\n\n"
            "tau_list = 0, 0.5, 1\nformat = csv\n"
        )
        config = RunConfig.from_file(path)
        assert config.N == 64
        assert config.L == 8.0
        assert config.tau_list == [0.0, 0.5, 1.0]
        assert config.format == "csv"

    def test_overrides_win(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("N = 64\nseed = 1\n")
        config = RunConfig.from_file(path, {"seed": 5, "N": None})
        assert config.N == 64
        assert config.seed == 5

    def test_missing(self, tmp_path):
        with pytest.raises(ShubinLabConfigError, match="Cannot read"):
            read_key_value_file(tmp_path / "absent.cfg")

    @pytest.mark.parametrize("line", ["N 64", "= 64"])
    def test_bad_line(self, tmp_path, line):
        path = tmp_path / "run.cfg"
        path.write_text(f"L = 8\n{line}\n")
        with pytest.raises(ShubinLabConfigError, match=":2:"):
            read_key_value_file(path)

    def test_invalid_value(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("N = 48\n")
        with pytest.raises(ShubinLabConfigError):
            RunConfig.from_file(path)
