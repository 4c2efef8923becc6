from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from ftau.trees import Caret, X, Y
from ftau.words import Generator

LETTERS = [Generator(f, i, e) for f in "xy" for i in (0, 1) for e in (1, -1)]

# acceptance outcomes, printed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)


def random_tree(rng: random.Random, n: int):
    """A random tree with exactly ``n`` carets of random types."""
    if n == 0:
        return None
    k = rng.randrange(n)
    return Caret(rng.choice((X, Y)), random_tree(rng, k), random_tree(rng, n - 1 - k))


def random_word(rng: random.Random, length: int, max_index: int = 3):
    return tuple(
        Generator(rng.choice("xy"), rng.randint(0, max_index), rng.choice((1, -1)))
        for _ in range(length)
    )


@st.composite
def trees(draw, max_carets: int = 8):
    n = draw(st.integers(0, max_carets))
    seed = draw(st.integers(0, 2**32))
    return random_tree(random.Random(seed), n)


generators = st.builds(
    Generator, st.sampled_from("xy"), st.integers(0, 4), st.sampled_from((1, -1))
)
words = st.lists(generators, max_size=6).map(tuple)


@pytest.fixture(scope="session")
def ball6():
    from ftau.metrics import bfs_ball

    return bfs_ball(6)
