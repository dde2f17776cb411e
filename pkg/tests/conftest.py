import pytest

from rsrepair.rs_code import CodeParams
from rsrepair.tower import make_tower

from oracles import SlowTower

# GF(4) = {0, 1, xi, xi^2} with xi^2 + xi + 1 = 0; integer codes below
XI, XI2 = 2, 3

ACCEPTANCE_RESULTS = []


def toy_code():
    """The [4, 2] code over GF(4) on points (0, 1, xi, xi^2)."""
    return CodeParams(make_tower(2, 1, 2, (1, 1, 1)), (0, 1, XI, XI2), 2)


def bits(c0, c1):
    """The GF(4) element c0 + c1 xi."""
    return c0 + 2 * c1


def all_files():
    for a1, a2, b1, b2 in ((i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1) for i in range(16)):
        yield (a1, a2, b1, b2)


@pytest.fixture(scope="session")
def gf4():
    return make_tower(2, 1, 2)


@pytest.fixture(scope="session")
def gf9():
    return make_tower(3, 1, 2)


@pytest.fixture(scope="session")
def gf16():
    return make_tower(2, 1, 4)


@pytest.fixture(scope="session")
def gf16_over4():
    return make_tower(2, 2, 2)


@pytest.fixture(scope="session")
def slow_of():
    cache = {}

    def get(tower):
        key = (tower.p, tower.m, tower.t, tower.irr)
        if key not in cache:
            cache[key] = SlowTower(tower.p, tower.m, tower.t, tower.irr)
        return cache[key]
    return get


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_RESULTS


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
