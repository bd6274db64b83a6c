import json

import numpy as np
import pandas as pd
import pytest

from shubinlab import cli
from shubinlab.models import CheckResult, Report

SMALL = ["-N", "64", "-L", "8"]


@pytest.fixture
def run(tmp_path):
    def _run(*argv: str) -> int:
        return cli.main([*argv, "--output-dir", str(tmp_path)])

    return _run


class TestParser:
    def test_commands(self):
        parser = cli.build_parser()
        args = parser.parse_args(["verify", "--suite", "cayley", "--tau", "0", "0.5"])
        assert args.handler is cli.cmd_verify
        assert args.tau_list == [0.0, 0.5]
        assert args.N is None

    def test_command_required(self):
        with pytest.raises(SystemExit):
            cli.build_parser().parse_args([])

    def test_unknown_suite(self):
        with pytest.raises(SystemExit):
            cli.main(["verify", "--suite", "everything"])

    def test_quantize_targets_exclusive(self):
        with pytest.raises(SystemExit):
            cli.build_parser().parse_args(
                ["quantize", "--symbol", "gaussian", "--intertwiner", "J"]
            )


class TestMain:
    def test_bad_grid_size(self, run):
        assert run("verify", "--suite", "cayley", "-N", "100") == 2

    def test_missing_config_file(self, tmp_path):
        argv = ["verify", "--suite", "cayley", "--config", str(tmp_path / "absent.cfg")]
        assert cli.main(argv) == 2

    def test_verify(self, run, tmp_path):
        assert run("verify", "--suite", "cayley") == 0
        report = json.loads((tmp_path / "report_cayley.json").read_text())
        assert report["pass"] is True
        assert report["config"]["N"] == 256

    def test_verify_from_config_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(f"N = 64\nL = 8\ntau_list = 0.5\noutput_dir = {tmp_path}\n")
        assert cli.main(["verify", "--suite", "ordering", "--config", str(path)]) == 0
        report = json.loads((tmp_path / "report_ordering.json").read_text())
        assert report["config"]["tau_list"] == [0.5]

    @pytest.mark.parametrize("fmt,suffix", [("json", ".json"), ("csv", ".csv")])
    def test_ordering_table(self, run, tmp_path, fmt, suffix):
        assert run("ordering-table", "--max-degree", "1", "--format", fmt) == 0
        path = tmp_path / f"ordering_table{suffix}"
        assert path.exists()
        if fmt == "json":
            assert len(json.loads(path.read_text())) == 4

    def test_wigner(self, run, tmp_path):
        assert run("wigner", "--signal", "gaussian", *SMALL, "--tau", "0.5", "1") == 0
        summary = json.loads((tmp_path / "wigner_gaussian.json").read_text())
        assert [entry["tau"] for entry in summary["tables"]] == [0.5, 1.0]
        assert summary["tables"][0]["max_imag"] < 1e-10
        assert "rihaczek_residual" in summary["tables"][1]
        frame = pd.read_csv(tmp_path / "wigner_gaussian_tau0.5.csv")
        assert list(frame.columns) == ["x", "p", "re", "im"]
        assert len(frame) == 64 * 64

    def test_wigner_two_gaussian_cross_term(self, run, tmp_path):
        assert run("wigner", "--signal", "two-gaussian", *SMALL, "--tau", "0.5") == 0
        summary = json.loads((tmp_path / "wigner_two-gaussian.json").read_text())
        assert summary["tables"][0]["cross_term_ratio"] > 0.5

    def test_quantize_symbol(self, run, tmp_path):
        assert run("quantize", "--symbol", "gaussian", *SMALL, "--tau", "0") == 0
        assert (tmp_path / "op_gaussian_tau0.csv").exists()

    def test_quantize_born_jordan(self, run, tmp_path):
        assert run("quantize", "--symbol", "gaussian", "--born-jordan", *SMALL) == 0
        assert (tmp_path / "op_bj_gaussian.csv").exists()

    def test_quantize_intertwiner(self, run, tmp_path):
        assert run("quantize", "--intertwiner", "J", *SMALL, "--tau", "0.5") == 0
        assert (tmp_path / "R_J_tau0.5.csv").exists()

    def test_quantize_intertwiner_outside_domain(self, run):
        # R_1(-I) has no kernel
        assert run("quantize", "--intertwiner=-I", *SMALL, "--tau", "1") == 2

    def test_covariance_scan(self, run, tmp_path):
        assert run("covariance-scan", *SMALL, "--tau", "0.5") == 0
        rows = json.loads((tmp_path / "covariance_scan.json").read_text())
        assert len(rows) == 6

    def test_verify_report_with_numpy_details(self, run, tmp_path, monkeypatch):
        def fake_run_suite(name, config):
            check = CheckResult.contract(
                "tiny.numpy",
                "x = y",
                np.float64(1e-9),
                1e-6,
                phase=-1j,
                details={"profile": np.array([0.5, 0.25]), "exact": np.bool_(True)},
            )
            return Report.build(config, [check])

        monkeypatch.setattr(cli, "run_suite", fake_run_suite)
        assert run("verify", "--suite", "cayley") == 0
        report = json.loads((tmp_path / "report_cayley.json").read_text())
        (check,) = report["checks"]
        assert check["details"] == {"profile": [0.5, 0.25], "exact": True}
        assert check["phase"] == [0.0, -1.0]
