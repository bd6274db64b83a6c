import numpy as np
import pytest

from shubinlab.gridfield import (
    Grid1D,
    SampledFunction,
    coherent_state,
    gaussian,
    probe_matrix,
)
from shubinlab.models import RunConfig


@pytest.fixture(scope="session")
def grid() -> Grid1D:
    """Small self-dual grid, dx = dp = 1/8 on a window of length 8"""
    return Grid1D.self_dual(64)


@pytest.fixture(scope="session")
def default_grid() -> Grid1D:
    return Grid1D()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def probes(grid) -> np.ndarray:
    return probe_matrix(grid)


@pytest.fixture(scope="session")
def phi0(grid) -> SampledFunction:
    return gaussian(grid)


@pytest.fixture(scope="session")
def coherent(grid) -> SampledFunction:
    return coherent_state(grid, (0.5, -0.25))


@pytest.fixture
def small_config(tmp_path) -> RunConfig:
    return RunConfig.from_mapping(
        {"N": 64, "L": 8.0, "tau_list": [0.0, 0.5, 1.0], "output_dir": str(tmp_path)}
    )
