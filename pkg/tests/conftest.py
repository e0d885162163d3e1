import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from xorgames import PairEntry, XorGame

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_game(rng: np.random.Generator, max_side: int = 4, name: str = "random") -> XorGame:
    """Random XOR game with up to ``max_side`` questions per player and random support."""
    n_a = int(rng.integers(1, max_side + 1))
    n_b = int(rng.integers(1, max_side + 1))
    mask = rng.random((n_a, n_b)) < 0.7
    if not mask.any():
        mask[rng.integers(n_a), rng.integers(n_b)] = True
    cells = np.argwhere(mask)
    raw = rng.integers(1, 20, size=len(cells))
    total = int(raw.sum())
    pairs = [
        PairEntry.from_fraction(int(s), int(t), Fraction(int(w), total), int(rng.integers(2)))
        for (s, t), w in zip(cells, raw)
    ]
    return XorGame(name, n_a, n_b, tuple(pairs))


@st.composite
def xor_games(draw, max_side: int = 4):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_game(np.random.default_rng(seed), max_side)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[i])
