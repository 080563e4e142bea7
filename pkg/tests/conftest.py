from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from pwx import build_paper_map

# parameter grid exercised throughout: expanding slopes x contracting slopes
GRID_P = (Fraction(3, 2), Fraction(2), Fraction(3), Fraction(5))
GRID_S = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def grid_maps():
    return [(p, s, build_paper_map(p, s)) for p in GRID_P for s in GRID_S]


def p_fractions(max_value=100, max_denominator=30):
    return st.fractions(
        min_value=Fraction(1), max_value=Fraction(max_value), max_denominator=max_denominator
    ).filter(lambda q: q > 1)


def s_fractions(max_denominator=30):
    return st.fractions(
        min_value=Fraction(0), max_value=Fraction(1), max_denominator=max_denominator
    ).filter(lambda q: 0 < q < 1)


@pytest.fixture
def paper_half():
    return build_paper_map(2, Fraction(1, 2))
