import numpy as np
import pytest

from tmib.corpus import corpus as make_corpus
from tmib.signal import default_grid
from tmib.stft import gaussian_window

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def grid():
    return default_grid()


@pytest.fixture(scope="session")
def window(grid):
    return gaussian_window(grid)


@pytest.fixture(scope="session")
def signals(grid):
    return make_corpus(grid, seed=20240101, count=10)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
