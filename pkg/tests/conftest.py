"""Shared strategies and hypothesis configuration."""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from rieszops import LatticeVector, RegularOperator

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=50,
)
settings.load_profile("default")


#: Small rationals: the grid every exact-identity test draws from.
fractions_st = st.fractions(min_value=-5, max_value=5, max_denominator=8)
positive_fractions_st = st.fractions(min_value=0, max_value=5, max_denominator=8)
dims_st = st.integers(min_value=1, max_value=3)


@st.composite
def vectors(draw, dim=None, positive=False):
    n = draw(dims_st) if dim is None else dim
    src = positive_fractions_st if positive else fractions_st
    return LatticeVector([draw(src) for _ in range(n)])


@st.composite
def matrices(draw, rows=None, cols=None, positive=False):
    r = draw(dims_st) if rows is None else rows
    c = draw(dims_st) if cols is None else cols
    src = positive_fractions_st if positive else fractions_st
    return RegularOperator(r, c, [draw(src) for _ in range(r * c)])


@st.composite
def matrix_pairs_same_shape(draw):
    r, c = draw(dims_st), draw(dims_st)
    return draw(matrices(rows=r, cols=c)), draw(matrices(rows=r, cols=c))


@st.composite
def superop_quadruple_dims(draw):
    """(w, x, y, z) with A: z x y, B: x x w, T: y x x."""
    return tuple(draw(dims_st) for _ in range(4))


@pytest.fixture
def rng_seed():
    return 12345


#: Lines registered by the acceptance suite, echoed after the run so the
#: per-criterion verdicts stay visible even under output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
