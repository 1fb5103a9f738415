import math
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nclrobots.generate import k4
from nclrobots.motion import Instance, rect

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def small_instance(rng: random.Random, max_side: int = 8, max_robots: int = 4, budget: int = 4000):
    """A random instance no larger than ``max_side`` half-units a side whose
    unlabeled state count stays under ``budget`` and that fits its robots; obstacles
    are pixel rectangles."""
    from oracles import free_centers, motion_graph
    while True:
        w, h = rng.randint(3, max_side), rng.randint(3, max_side)
        obstacles = []
        for _ in range(rng.randint(0, 3)):
            x0, y0 = rng.randrange(w), rng.randrange(h)
            obstacles.append(rect(x0, y0, min(w, x0 + rng.randint(1, 3)), min(h, y0 + rng.randint(1, 3))))
        points = [(rng.randint(1, w - 1), rng.randint(1, h - 1)) for _ in range(rng.randint(0, 1))]
        robots = rng.randint(1, max_robots)
        try:
            inst = Instance(w, h, robots, tuple(obstacles), tuple(points))
        except ValueError:
            continue
        centers, _ = free_centers(inst)
        if len(centers) >= robots and math.comb(len(centers), robots) <= budget and motion_graph(inst):
            return inst


@st.composite
def instances(draw, max_robots: int = 4):
    return small_instance(random.Random(draw(st.integers(0, 2 ** 32 - 1))), max_robots=max_robots)


@pytest.fixture(scope="session")
def k4_or():
    return k4("OOOO")


@pytest.fixture(scope="session")
def k4_and():
    return k4("AAAO")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
