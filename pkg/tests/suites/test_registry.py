import math

import pytest

from shubinlab import suites
from shubinlab.exceptions import AlignmentError, DimensionError, ShubinLabConfigError
from shubinlab.models import CheckResult, Expectation
from shubinlab.suites.base import Suite, is_weyl


class TinySuite(Suite):
    name = "tiny"

    def checks(self):
        yield CheckResult.exact("tiny.b", "holds", True)
        yield CheckResult.contract("tiny.a", "small", 0.1, 1.0)


class TestRegistry:
    def test_names(self):
        assert set(suites.SUITES) == {
            "cayley",
            "heisenberg",
            "shubin",
            "intertwine",
            "bornjordan",
            "ordering",
        }
        assert suites.SUITE_NAMES[-1] == "all"

    def test_unknown(self, small_config):
        with pytest.raises(ShubinLabConfigError, match="Unknown suite"):
            suites.run_suite("everything", small_config)

    def test_all(self, small_config, monkeypatch):
        selected = {"tiny": TinySuite, "cayley": suites.SUITES["cayley"]}
        monkeypatch.setattr(suites, "SUITES", selected)
        report = suites.run_suite("all", small_config)
        names = [check.name for check in report.checks]
        assert names == sorted(names)
        assert "tiny.a" in names
        assert any(name.startswith("cayley.") for name in names)
        assert report.passed


class TestSuiteBase:
    def test_seeded(self, small_config):
        first = TinySuite(small_config).rng.uniform()
        second = TinySuite(small_config).rng.uniform()
        assert first == second

    def test_probes_cached(self, small_config):
        suite = TinySuite(small_config)
        assert suite.probes is suite.probes
        assert suite.probes.shape == (64, 9)

    def test_run(self, small_config):
        results = TinySuite(small_config).run()
        assert [result.name for result in results] == ["tiny.b", "tiny.a"]

    @pytest.mark.parametrize(
        "tau,expected", [(0.5, True), (0.5 + 1e-13, True), (0.3, False)]
    )
    def test_is_weyl(self, tau, expected):
        assert is_weyl(tau) == expected

    def test_weyl_contract(self):
        at_half = Suite.weyl_contract("a", "", 1.0, 0.5, 1e-3)
        elsewhere = Suite.weyl_contract("a", "", 1.0, 0.3, 1e-3)
        assert at_half.expectation == Expectation.CONTRACT.value
        assert not at_half.passed
        assert elsewhere.expectation == Expectation.REPORT.value
        assert elsewhere.passed

    def test_guarded_expected_error(self):
        def measure():
            raise AlignmentError("off lattice", 0.01)

        result = Suite.guarded("a", "", measure, expected=(AlignmentError,))
        assert result.passed
        assert math.isnan(result.residual)
        assert result.details["error"] == "AlignmentError"

    def test_guarded_unexpected_error(self):
        def measure():
            raise DimensionError("bad shape")

        result = Suite.guarded("a", "", measure, expected=(AlignmentError,))
        assert not result.passed
        assert result.details == {"error": "DimensionError", "message": "bad shape"}

    def test_guarded_passthrough(self):
        expected = CheckResult.exact("a", "", True)
        assert Suite.guarded("a", "", lambda: expected) is expected

    def test_checks_not_implemented(self, small_config):
        with pytest.raises(NotImplementedError):
            Suite(small_config).run()

    def test_demoted(self):
        failed = CheckResult.contract(
            "a", "x = y", 2.2, 1e-5, phase=1j, details={"k": 1}
        )
        result = Suite.demoted(failed, "grid is not self-dual")
        assert result.passed
        assert result.expectation == Expectation.REPORT.value
        assert result.residual == 2.2
        assert result.phase == 1j
        assert result.details == {
            "k": 1,
            "demoted": "grid is not self-dual",
            "expectation": Expectation.CONTRACT.value,
        }
        assert failed.details == {"k": 1}
