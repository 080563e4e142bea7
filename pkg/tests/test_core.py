from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pwx import (
    OutOfDomainError,
    ParamDomainError,
    RangeViolationError,
    as_rational,
    build_class_f_map,
    build_paper_map,
    parse_rational,
)
from conftest import p_fractions, s_fractions


def test_build_class_f_example():
    m = build_class_f_map(2, F(1, 2), 0, F(-1, 4), F(1, 2))
    left, right = m.branches
    assert (left.label, left.domain_lo, left.domain_hi) == ("L", 0, F(1, 2))
    assert (left.slope, left.intercept) == (2, 0)
    assert (right.label, right.domain_lo, right.domain_hi) == ("R", F(1, 2), 1)
    assert (right.slope, right.intercept) == (F(1, 2), F(-1, 4))
    assert left.lo_closed and left.hi_closed
    assert not right.lo_closed and right.hi_closed


def test_build_class_f_rejects_bad_p():
    with pytest.raises(ParamDomainError):
        build_class_f_map(F(1, 2), F(1, 2), 0, 0, F(1, 2))


def test_build_class_f_rejects_range_violation():
    # f(1/2) = 2*(1/2) + 1/2 = 3/2 > 1
    with pytest.raises(RangeViolationError):
        build_class_f_map(2, F(1, 2), F(1, 2), F(-1, 4), F(1, 2))


def test_build_class_f_rejects_degenerate_breakpoint():
    for d in (0, 1, F(-1, 2), 2):
        with pytest.raises(ParamDomainError):
            build_class_f_map(2, F(1, 2), 0, F(-1, 4), d)


@pytest.mark.parametrize(
    "p, s, d, b",
    [
        (F(2), F(1, 2), F(1, 2), F(-1, 4)),
        (F(3), F(1, 2), F(1, 3), F(-1, 6)),
        (F(10), F(9, 10), F(1, 10), F(-9, 100)),
    ],
)
def test_build_paper_map_substitution(p, s, d, b):
    m = build_paper_map(p, s)
    assert (m.p, m.s, m.d) == (p, s, d)
    assert m.a == 0
    assert m.b == b == -s / p
    assert m.left.image_lo == 0 and m.left.image_hi == 1  # onto branch
    assert m.right.image_hi == s * (1 - 1 / p)


def test_build_paper_map_rejects_bad_params():
    with pytest.raises(ParamDomainError):
        build_paper_map(1, F(1, 2))
    with pytest.raises(ParamDomainError):
        build_paper_map(2, 1)
    with pytest.raises(ParamDomainError):
        build_paper_map(2, 0)


def test_eval_examples(paper_half):
    assert paper_half(F(1, 2)) == 1  # breakpoint belongs to the left branch
    assert paper_half(1) == F(1, 4)
    assert paper_half(0) == 0


def test_eval_out_of_domain(paper_half):
    with pytest.raises(OutOfDomainError):
        paper_half(F(3, 2))
    with pytest.raises(OutOfDomainError):
        paper_half(F(-1, 100))


def test_decimal_strings_stay_exact():
    m = build_paper_map("2", "0.9")
    assert m.s == F(9, 10)
    assert parse_rational("0.9") == F(9, 10)
    assert parse_rational("-1/4") == F(-1, 4)
    assert parse_rational("007") == 7


def test_floats_are_refused():
    with pytest.raises(TypeError):
        build_paper_map(2.0, F(1, 2))
    with pytest.raises(TypeError):
        as_rational(0.9)
    with pytest.raises(TypeError):
        as_rational(True)


def test_parse_rational_rejects_junk():
    for bad in ("", "1e3", "1/0", "a/b", "1.5.2", "1/2/3", ".5", "5."):
        with pytest.raises(ValueError):
            parse_rational(bad)


@given(p=p_fractions(), s=s_fractions())
def test_tiling_and_paper_invariants(p, s):
    m = build_paper_map(p, s)
    assert sum(b.width for b in m.branches) == 1
    assert m(m.d) == 1          # left branch is onto
    assert m(1) == s * (1 - 1 / p)
    assert m(0) == 0


@given(
    p=p_fractions(),
    s=s_fractions(),
    t=st.fractions(min_value=0, max_value=1, max_denominator=64),
)
def test_eval_matches_owning_branch(p, s, t):
    m = build_paper_map(p, s)
    branch = m.branch_at(t)
    assert branch.contains(t)
    assert m(t) == branch.slope * t + branch.intercept


def test_immutability(paper_half):
    with pytest.raises(AttributeError):
        paper_half.p = F(3)
    with pytest.raises(AttributeError):
        paper_half.left.slope = F(7)
