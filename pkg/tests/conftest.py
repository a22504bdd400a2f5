from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from qmetric.space import ColoredSpace, build_simplex_product

SQUARE = [[0, 1, Fraction(3, 2), 1], [1, 0, 1, Fraction(3, 2)],
          [Fraction(3, 2), 1, 0, 1], [1, Fraction(3, 2), 1, 0]]
RECTANGLE = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]


@pytest.fixture
def square() -> ColoredSpace:
    return ColoredSpace.from_distances(SQUARE)


@pytest.fixture
def rectangle() -> ColoredSpace:
    return ColoredSpace.from_distances(RECTANGLE)


def cycle_space(n: int) -> ColoredSpace:
    """Points on a regular n-gon, colored by cyclic distance."""
    return ColoredSpace.from_coloring(n, lambda i, j: min((i - j) % n, (j - i) % n),
                                      {d: d for d in range(1, n // 2 + 1)})


def sq_product(m: int, s: int) -> ColoredSpace:
    return build_simplex_product(m, s, 2, 1)


@st.composite
def colored_spaces(draw, min_n: int = 1, max_n: int = 6, max_colors: int = 4):
    n = draw(st.integers(min_n, max_n))
    k = n * (n - 1) // 2
    word = draw(st.lists(st.integers(0, max_colors - 1), min_size=k, max_size=k))
    return ColoredSpace.from_word(n, word)



@st.composite
def permutations_of(draw, n: int):
    return tuple(draw(st.permutations(range(n))))


@lru_cache(maxsize=None)
def exhaustive_survey(n: int):
    from qmetric.classifier import SurveyConfig, survey
    return survey(SurveyConfig(n, exhaustive=True))


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
