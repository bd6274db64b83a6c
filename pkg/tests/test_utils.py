import types

import numpy as np
import pytest

from shubinlab import utils


class TestEnvVars:
    @pytest.mark.parametrize(
        "env_var_value,expected",
        [
            ("yes", True),
            ("Yes", True),
            ("True", True),
            ("y", True),
            ("1", True),
            ("0", False),
            ("", False),
            ("false", False),
        ],
    )
    def test_is_env_var(self, monkeypatch, env_var_value, expected):
        monkeypatch.setenv("SHUBINLAB_TEST_VAR", env_var_value)
        assert utils.is_env_var("SHUBINLAB_TEST_VAR") == expected


@pytest.mark.parametrize(
    "data,n,expected",
    [
        (range(5), 2, [(0, 1), (2, 3), (4,)]),
        (range(5), 5, [(0, 1, 2, 3, 4)]),
        (range(5), 6, [(0, 1, 2, 3, 4)]),
        (range(0), 3, []),
    ],
)
def test_grouper(data, n, expected):
    assert isinstance(utils.grouper(data, n), types.GeneratorType)
    assert list(utils.grouper(data, n)) == expected


def test_grouper_cast():
    assert list(utils.grouper(range(3), 2, cast=list)) == [[0, 1], [2]]


@pytest.mark.parametrize(
    "value,expected", [(1, True), (64, True), (256, True), (0, False), (48, False)]
)
def test_is_power_of_two(value, expected):
    assert utils.is_power_of_two(value) == expected


class TestNorms:
    def test_max_abs(self):
        assert utils.max_abs(np.array([1.0, -3.0, 2j])) == 3.0
        assert utils.max_abs(np.array([])) == 0.0

    def test_relative_frobenius(self):
        expected = np.array([3.0, 4.0])
        assert utils.relative_frobenius(expected + [0.0, 0.5], expected) == 0.1

    def test_relative_frobenius_zero_reference(self):
        assert utils.relative_frobenius(np.array([3.0, 4.0]), np.zeros(2)) == 5.0

    def test_relative_frobenius_noise_reference(self):
        noise = np.array([2e-15, -1e-14])
        assert utils.relative_frobenius(np.zeros(2), noise) < 1e-13
        assert utils.relative_frobenius(np.zeros(2), noise, floor=0.0) == 1.0

    def test_best_phase(self, rng):
        reference = rng.normal(size=(4, 3)) + 1j * rng.normal(size=(4, 3))
        assert utils.best_phase(reference, -1j * reference) == pytest.approx(-1j)

    def test_best_phase_of_zero(self):
        assert utils.best_phase(np.zeros(3), np.ones(3)) == 0j


class Point:
    def __init__(self):
        self.x = 1.0
        self.label = None


def test_create_repr():
    assert utils.create_repr(Point()) == "Point(x=1.0)"
    assert utils.create_repr(Point(), ["x"]) == "Point(x=1.0)"
