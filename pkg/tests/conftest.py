import numpy as np
import pytest

from sailgrid.env import grid_sailing_task


class StubRng:
    """Replays a fixed sequence of uniform draws, counting consumption."""

    def __init__(self, draws):
        self._draws = list(draws)
        self.calls = 0

    def random(self):
        self.calls += 1
        return self._draws.pop(0)


class ForbiddenRng:
    """Fails the test if any draw is consumed."""

    def random(self):
        raise AssertionError("rng consumed where none was expected")


@pytest.fixture
def world():
    return grid_sailing_task()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def stub_rng():
    return StubRng


@pytest.fixture
def forbidden_rng():
    return ForbiddenRng()
