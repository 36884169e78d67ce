import numpy as np
import pytest
from hypothesis import settings, strategies as st

from nsgframes.certify import certify_all
from nsgframes.lattice import Grid
from nsgframes.windows import NsgSystem, Window, example1_system, split

settings.register_profile("default", max_examples=30, deadline=None, derandomize=True)
settings.load_profile("default")

STEPS = (0.5, 1.0, 2.0)
SMALL = Grid(8, 48)


def random_system(rng, grid=SMALL, n_max=6, localized=True, real=False):
    """Random custom windows with mixed steps ``b in {1/2, 1, 2}``.

    Localized windows get a Gaussian envelope around their center so the
    systems resemble the almost painless case; otherwise samples are
    unstructured noise.
    """
    n = int(rng.integers(1, n_max + 1))
    idx = rng.choice(grid.L, size=n, replace=False)
    wins = []
    for i in sorted(idx):
        b = float(rng.choice(STEPS))
        s = rng.standard_normal(grid.L)
        if not real:
            s = s + 1j * rng.standard_normal(grid.L)
        if localized:
            u = grid.offsets(i / grid.Q)
            s = s * np.exp(-np.pi * (1.5 * b * u) ** 2)
        wins.append(Window(s, i / grid.Q, b, grid))
    return NsgSystem(grid, wins, 1 / grid.Q, 0.5, 2.0)


@st.composite
def systems(draw, grid=SMALL, n_max=6, localized=True):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_system(np.random.default_rng(seed), grid, n_max, localized)


@pytest.fixture(scope="session")
def ex1():
    return example1_system()


@pytest.fixture(scope="session")
def ex1_split(ex1):
    return split(ex1)


@pytest.fixture(scope="session")
def ex1_reports(ex1):
    return certify_all(ex1)


# one line per acceptance criterion, collected by test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
