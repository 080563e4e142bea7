"""Mixing diagnostics: set evolution, transfer operator, Ulam discretisation.

The strong-mixing behaviour of these maps says the image of any
positive-measure set eventually fills [0, 1].  This module makes that
observable at desk scale: interval sets are pushed forward exactly (so
"measure equals 1" is a hard equality, not a tolerance check), the
transfer operator acts exactly on piecewise-constant densities, and a
row-stochastic Ulam matrix with exact rational entries feeds a floating
power iteration for the invariant density.  Only the power iteration runs
in floating point.

Interval endpoints carry no closure flags here: Lebesgue measure is the
only consumer, and adjacent or overlapping intervals are always merged.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import ONE, ZERO, PiecewiseLinearMap
from .errors import EmptyInputError, OutOfDomainError, ParamDomainError
from .rational import as_rational

__all__ = [
    "EvolutionTrace",
    "IntervalSet",
    "PiecewiseConstantDensity",
    "StationaryResult",
    "UlamMatrix",
    "evolve_until_full",
    "push_forward_set",
    "stationary_density",
    "transfer_density",
    "ulam_matrix",
]


@dataclass(frozen=True)
class IntervalSet:
    """Finite disjoint union of subintervals of [0, 1], sorted and merged."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        pairs = []
        for lo, hi in self.intervals:
            lo, hi = as_rational(lo), as_rational(hi)
            if not ZERO <= lo < hi <= ONE:
                raise ValueError(f"bad interval [{lo}, {hi}]: need 0 <= lo < hi <= 1")
            pairs.append((lo, hi))
        pairs.sort()
        merged: list[list[Fraction]] = []
        for lo, hi in pairs:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        object.__setattr__(self, "intervals", tuple((lo, hi) for lo, hi in merged))

    @property
    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), ZERO)

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)


def push_forward_set(m: PiecewiseLinearMap, A: IntervalSet) -> IntervalSet:
    """Exact image f(A): branchwise affine images, merged and sorted.

    Zero-width overlaps contribute nothing (single points have no measure).
    """
    images = []
    for branch in m.branches:
        for lo, hi in A.intervals:
            cut_lo = max(lo, branch.domain_lo)
            cut_hi = min(hi, branch.domain_hi)
            if cut_lo < cut_hi:
                images.append((branch(cut_lo), branch(cut_hi)))
    return IntervalSet(tuple(images))


@dataclass(frozen=True)
class EvolutionTrace:
    """Per-step measures of an evolving set; n_full is None when capped."""

    steps: tuple[tuple[int, Fraction], ...]
    n_full: int | None

    @property
    def reached_full(self) -> bool:
        return self.n_full is not None

    @property
    def final_measure(self) -> Fraction:
        return self.steps[-1][1]


def evolve_until_full(m: PiecewiseLinearMap, A: IntervalSet, cap: int) -> EvolutionTrace:
    """Push A forward until its measure is exactly 1 or `cap` steps elapse.

    Hitting the cap is reported as a not-full trace, never treated as a
    counterexample: fullness is only guaranteed in the limit.
    """
    if not isinstance(cap, int) or cap < 1:
        raise ParamDomainError("cap must be a positive integer")
    measure = A.measure
    if measure == 0:
        raise EmptyInputError("evolution needs a set of positive measure")
    steps = [(0, measure)]
    n_full = 0 if measure == 1 else None
    current = A
    n = 0
    while n_full is None and n < cap:
        n += 1
        current = push_forward_set(m, current)
        measure = current.measure
        steps.append((n, measure))
        if measure == 1:
            n_full = n
    return EvolutionTrace(steps=tuple(steps), n_full=n_full)


@dataclass(frozen=True)
class PiecewiseConstantDensity:
    """Nonnegative step function on [0, 1] integrating to exactly 1."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        bps = tuple(as_rational(t) for t in self.breakpoints)
        vals = tuple(as_rational(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        if len(bps) < 2 or bps[0] != ZERO or bps[-1] != ONE:
            raise ValueError("breakpoints must run from 0 to 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(vals) != len(bps) - 1:
            raise ValueError("need exactly one value per cell")
        if any(v < 0 for v in vals):
            raise ValueError("density values must be nonnegative")
        if self.integral != 1:
            raise ValueError(f"density must integrate to exactly 1, got {self.integral}")

    @classmethod
    def uniform(cls) -> "PiecewiseConstantDensity":
        return cls((ZERO, ONE), (ONE,))

    @property
    def integral(self) -> Fraction:
        return sum(
            (v * (b1 - b0) for v, b0, b1 in zip(self.values, self.breakpoints, self.breakpoints[1:])),
            ZERO,
        )

    def value_at(self, x) -> Fraction:
        """Value on the cell containing x (cells are right-open, last closed)."""
        x = as_rational(x)
        if not ZERO <= x <= ONE:
            raise OutOfDomainError(f"{x} lies outside [0, 1]")
        idx = bisect_right(self.breakpoints, x) - 1
        return self.values[min(idx, len(self.values) - 1)]


def transfer_density(m: PiecewiseLinearMap, g: PiecewiseConstantDensity) -> PiecewiseConstantDensity:
    """Exact pushforward of a density: each branch contributes
    g(branch_inverse(y)) / slope on its image interval.

    The output partition is generated by the branch-image endpoints together
    with the images of g's breakpoints, so the result is exactly piecewise
    constant and the integral is preserved exactly.
    """
    points = {ZERO, ONE}
    for branch in m.branches:
        points.add(branch.image_lo)
        points.add(branch.image_hi)
        for t in g.breakpoints:
            if branch.domain_lo <= t <= branch.domain_hi:
                points.add(branch(t))
    bps = sorted(points)
    values = []
    for y0, y1 in zip(bps, bps[1:]):
        mid = (y0 + y1) / 2
        total = ZERO
        for branch in m.branches:
            # cells never straddle an image endpoint, so endpoint tests suffice
            if branch.image_lo <= y0 and y1 <= branch.image_hi:
                total += g.value_at((mid - branch.intercept) / branch.slope) / branch.slope
        values.append(total)
    return PiecewiseConstantDensity(tuple(bps), tuple(values))


@dataclass(frozen=True)
class UlamMatrix:
    """Row-stochastic transition matrix over the uniform k-cell partition.

    Entry (i, j) is measure(cell_i ∩ f_inverse(cell_j)) / measure(cell_i),
    exactly rational.  Rows are stored sparsely as sorted (column, weight)
    pairs; rows sum to exactly 1.
    """

    k: int
    rows: tuple[tuple[tuple[int, Fraction], ...], ...]

    def entry(self, i: int, j: int) -> Fraction:
        for col, weight in self.rows[i]:
            if col == j:
                return weight
        return ZERO

    def row_sum(self, i: int) -> Fraction:
        return sum((weight for _, weight in self.rows[i]), ZERO)

    def dense(self) -> list[list[Fraction]]:
        out = [[ZERO] * self.k for _ in range(self.k)]
        for i, row in enumerate(self.rows):
            for col, weight in row:
                out[i][col] = weight
        return out

    def to_float(self) -> np.ndarray:
        out = np.zeros((self.k, self.k))
        for i, row in enumerate(self.rows):
            for col, weight in row:
                out[i, col] = float(weight)
        return out


def ulam_matrix(m: PiecewiseLinearMap, k: int) -> UlamMatrix:
    """Exact Ulam discretisation of the transfer operator on k uniform cells."""
    if not isinstance(k, int) or k < 2:
        raise ParamDomainError("cell count k must be an integer >= 2")
    rows = []
    for i in range(k):
        cell_lo, cell_hi = Fraction(i, k), Fraction(i + 1, k)
        acc: dict[int, Fraction] = {}
        for branch in m.branches:
            lo = max(cell_lo, branch.domain_lo)
            hi = min(cell_hi, branch.domain_hi)
            if lo >= hi:
                continue
            y_lo, y_hi = branch(lo), branch(hi)
            j = (y_lo.numerator * k) // y_lo.denominator  # floor(y_lo * k)
            while Fraction(j, k) < y_hi:
                seg_lo = max(y_lo, Fraction(j, k))
                seg_hi = min(y_hi, Fraction(j + 1, k))
                if seg_lo < seg_hi:
                    acc[j] = acc.get(j, ZERO) + k * (seg_hi - seg_lo) / branch.slope
                j += 1
        rows.append(tuple(sorted(acc.items())))
    return UlamMatrix(k=k, rows=tuple(rows))


@dataclass(frozen=True)
class StationaryResult:
    """Power-iteration output: the approximate invariant density and residual.

    The floating iterate is renormalised exactly when packed into the
    density, so the returned object integrates to exactly 1 even though the
    iteration itself ran in floating point.  `converged` is False when
    max_iter elapsed first; the best iterate is still returned.
    """

    density: PiecewiseConstantDensity
    residual: float
    iterations: int
    converged: bool

    @property
    def masses(self) -> tuple[float, ...]:
        k = len(self.density.values)
        return tuple(float(v) / k for v in self.density.values)


def stationary_density(M: UlamMatrix, tol: float = 1e-12, max_iter: int = 100_000) -> StationaryResult:
    """Left fixed vector of M by power iteration from the uniform vector.

    The residual is the L1 distance between successive iterates at
    termination; cell masses are turned into density values via
    value_i = mass_i * k.
    """
    if not tol > 0:
        raise ParamDomainError("tol must be positive")
    if not isinstance(max_iter, int) or max_iter < 1:
        raise ParamDomainError("max_iter must be a positive integer")
    matrix = M.to_float()
    k = M.k
    pi = np.full(k, 1.0 / k)
    residual = float("inf")
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        nxt = pi @ matrix
        total = nxt.sum()
        if total > 0:
            nxt = nxt / total
        residual = float(np.abs(nxt - pi).sum())
        pi = nxt
        if residual < tol:
            converged = True
            break
    exact_masses = [Fraction(float(x)) for x in pi]
    total_mass = sum(exact_masses)
    breakpoints = tuple(Fraction(i, k) for i in range(k + 1))
    values = tuple(x / total_mass * k for x in exact_masses)
    density = PiecewiseConstantDensity(breakpoints, values)
    return StationaryResult(
        density=density, residual=residual, iterations=iterations, converged=converged
    )
