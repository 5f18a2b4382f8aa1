import pytest
import numpy as np

from CodedTN.Classes.examples import (
    hyperedge_example_network,
    matmul_network,
    two_node_example_network,
)
from CodedTN.Classes.field import Complex128, PrimeField, Real64


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the timing tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: wall-clock measurements, run with --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def gf():
    return PrimeField()


@pytest.fixture
def gf7():
    return PrimeField(7)


@pytest.fixture
def c128():
    return Complex128()


@pytest.fixture
def f64():
    return Real64()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def matmul():
    return matmul_network([[1, 2], [3, 4]], [[5, 6], [7, 8]])


@pytest.fixture
def example1():
    # two 2-node indices, L = (4, 3)
    return two_node_example_network()


@pytest.fixture
def example2():
    # m, L = (3, 2), (4, 2)
    return hyperedge_example_network()
