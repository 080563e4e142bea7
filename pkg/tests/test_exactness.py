import random
from fractions import Fraction as F

import numpy as np
import pytest

from pwx import (
    EmptyInputError,
    IntervalSet,
    ParamDomainError,
    PiecewiseConstantDensity,
    UlamMatrix,
    build_paper_map,
    evolve_until_full,
    push_forward_set,
    stationary_density,
    transfer_density,
    ulam_matrix,
)
from conftest import grid_maps
from oracles import rand_fraction


def iset(*pairs):
    return IntervalSet(tuple(pairs))


def test_interval_set_normalisation():
    s = iset((F(1, 2), F(3, 4)), (F(0), F(1, 4)), (F(1, 4), F(1, 3)))
    assert s.intervals == ((F(0), F(1, 3)), (F(1, 2), F(3, 4)))  # sorted, merged
    assert s.measure == F(1, 3) + F(1, 4)
    assert len(iset((F(0), F(1, 2)), (F(1, 4), F(3, 4)))) == 1  # overlap merged


def test_interval_set_validation():
    with pytest.raises(ValueError):
        iset((F(1, 2), F(1, 2)))
    with pytest.raises(ValueError):
        iset((F(3, 4), F(1, 2)))
    with pytest.raises(ValueError):
        iset((F(1, 2), F(3, 2)))


def test_push_forward_examples(paper_half):
    assert push_forward_set(paper_half, iset((0, F(1, 16)))).intervals == ((0, F(1, 8)),)
    image = push_forward_set(paper_half, iset((F(1, 2), 1)))
    assert image.intervals == ((0, F(1, 4)),)
    assert image.measure == F(1, 4)
    assert push_forward_set(paper_half, iset((0, 1))).intervals == ((0, 1),)


def test_push_forward_component_count(paper_half):
    current = iset((F(1, 3), F(2, 5)))
    for _ in range(30):
        image = push_forward_set(paper_half, current)
        assert len(image) <= len(current) + 1
        current = image


def test_evolve_examples(paper_half):
    trace = evolve_until_full(paper_half, iset((0, F(1, 16))), 64)
    assert [mu for _, mu in trace.steps] == [F(1, 16), F(1, 8), F(1, 4), F(1, 2), 1]
    assert trace.n_full == 4

    trace = evolve_until_full(paper_half, iset((F(1, 2), 1)), 64)
    assert [mu for _, mu in trace.steps] == [F(1, 2), F(1, 4), F(1, 2), 1]
    assert trace.n_full == 3

    assert evolve_until_full(paper_half, iset((0, 1)), 8).n_full == 0


def test_evolve_cap_and_empty(paper_half):
    with pytest.raises(EmptyInputError):
        evolve_until_full(paper_half, IntervalSet(()), 8)
    capped = evolve_until_full(paper_half, iset((F(1, 2), F(5, 8))), 1)
    assert capped.n_full is None and not capped.reached_full
    assert len(capped.steps) == 2


def test_full_measure_is_absorbing(paper_half):
    current = iset((0, 1))
    for _ in range(5):
        current = push_forward_set(paper_half, current)
        assert current.measure == 1


def test_exactness_diagnostic_on_grid():
    rng = random.Random(64)
    for _, _, m in grid_maps():
        for _ in range(2):
            lo = rand_fraction(rng, F(0), F(62, 64))
            hi = lo + rand_fraction(rng, F(1, 64), 1 - lo)
            trace = evolve_until_full(m, iset((lo, min(hi, F(1)))), 256)
            assert trace.reached_full, (m.p, m.s, lo, hi)


def test_density_validation():
    with pytest.raises(ValueError):
        PiecewiseConstantDensity((F(0), F(1, 2)), (F(2),))  # does not reach 1
    with pytest.raises(ValueError):
        PiecewiseConstantDensity((F(0), F(1)), (F(2),))  # integral 2
    with pytest.raises(ValueError):
        PiecewiseConstantDensity((F(0), F(1, 2), F(1)), (F(3), F(-1)))  # negative


def test_transfer_uniform_hand_cases():
    turned = transfer_density(build_paper_map(2, F(1, 2)), PiecewiseConstantDensity.uniform())
    assert turned.breakpoints == (0, F(1, 4), 1)
    assert turned.values == (F(5, 2), F(1, 2))
    assert turned.integral == 1

    turned = transfer_density(build_paper_map(3, F(1, 2)), PiecewiseConstantDensity.uniform())
    assert turned.breakpoints == (0, F(1, 3), 1)
    assert turned.values == (F(7, 3), F(1, 3))
    assert turned.integral == 1


def random_density(rng, cells=5):
    cuts = sorted({rand_fraction(rng, F(0), F(1)) for _ in range(cells - 1)})
    bps = (F(0), *cuts, F(1))
    raw = [F(rng.randint(0, 8), rng.randint(1, 4)) for _ in range(len(bps) - 1)]
    if all(v == 0 for v in raw):
        raw[0] = F(1)
    total = sum(v * (b1 - b0) for v, b0, b1 in zip(raw, bps, bps[1:]))
    return PiecewiseConstantDensity(bps, tuple(v / total for v in raw))


def test_transfer_conserves_integral():
    rng = random.Random(88)
    maps = [m for _, _, m in grid_maps()]
    for _ in range(30):
        g = random_density(rng)
        out = transfer_density(maps[rng.randrange(len(maps))], g)
        assert out.integral == 1
        assert all(v >= 0 for v in out.values)


def test_transfer_iterates_stay_exact(paper_half):
    g = PiecewiseConstantDensity.uniform()
    for _ in range(6):
        g = transfer_density(paper_half, g)
        assert g.integral == 1


def test_ulam_hand_cases():
    matrix = ulam_matrix(build_paper_map(2, F(1, 2)), 2)
    assert matrix.dense() == [[F(1, 2), F(1, 2)], [F(1), F(0)]]

    matrix = ulam_matrix(build_paper_map(3, F(1, 2)), 3)
    assert matrix.dense()[2] == [F(1), F(0), F(0)]


def test_ulam_rows_sum_to_one_exactly():
    rng = random.Random(31)
    for _, _, m in grid_maps():
        k = rng.choice([2, 3, 7, 16, 33])
        matrix = ulam_matrix(m, k)
        for i in range(k):
            assert matrix.row_sum(i) == 1
            assert all(w >= 0 for _, w in matrix.rows[i])


def test_ulam_requires_two_cells(paper_half):
    with pytest.raises(ParamDomainError):
        ulam_matrix(paper_half, 1)


def test_stationary_hand_case(paper_half):
    result = stationary_density(ulam_matrix(paper_half, 2))
    assert result.converged and result.residual < 1e-12
    assert result.masses == pytest.approx((2 / 3, 1 / 3), abs=1e-10)
    assert [float(v) for v in result.density.values] == pytest.approx([4 / 3, 2 / 3], abs=1e-9)
    assert result.density.integral == 1


def test_stationary_identity_matrix():
    eye = UlamMatrix(k=2, rows=(((0, F(1)),), ((1, F(1)),)))
    result = stationary_density(eye)
    assert result.converged and result.iterations == 1
    assert result.masses == pytest.approx((0.5, 0.5), abs=1e-15)


def test_stationary_masses_normalised():
    for _, _, m in [grid_maps()[i] for i in (0, 5, 11)]:
        result = stationary_density(ulam_matrix(m, 32))
        masses = np.array(result.masses)
        assert (masses >= 0).all()
        assert abs(masses.sum() - 1.0) < 1e-12


def test_stationary_not_converged_flag(paper_half):
    result = stationary_density(ulam_matrix(paper_half, 16), tol=1e-300, max_iter=3)
    assert not result.converged
    assert result.iterations == 3
    assert result.density.integral == 1  # best iterate still returned, normalised
