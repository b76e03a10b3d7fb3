import random

import pytest

from pizzacut.generate import clustered_family, random_family
from pizzacut.instance import make_family


@pytest.fixture
def four_singletons():
    return make_family([[(0, 0)], [(3, 1)], [(1, 4)], [(5, 5)]])


@pytest.fixture
def unit_square_singletons():
    return make_family([[(0, 0)], [(1, 0)], [(0, 1)], [(1, 1)]])


def odd_sizes(rng, k, top=5):
    return [rng.choice(range(1, top + 1, 2)) for _ in range(k)]


def small_random(seed, k=4, top=3):
    rng = random.Random(seed)
    return random_family(odd_sizes(rng, k, top), seed=seed)


def small_clustered(seed, k=4, top=5):
    rng = random.Random(seed)
    return clustered_family([rng.randint(1, top) for _ in range(k)], seed=seed)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(line)
