"""Exact composition and iteration with itinerary bookkeeping.

A branch of the N-th iterate is a maximal interval on which the orbit
follows one fixed word over {L, R}; its slope is the product of the branch
slopes along the word, p^(#L) * s^(#R) exactly.  Composition refines the
inner map's domains by pulling the outer map's breakpoints back through
each inner affine piece.  Empty refined pieces are pruned, single points
are dropped, and branches with distinct words are kept separate even when
adjacent and collinear, so itinerary statistics stay first-class.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .core import ONE, ZERO, PiecewiseLinearMap
from .errors import (
    BaseMismatchError,
    CapExceededError,
    NotFoundWithinCapError,
    OutOfDomainError,
    ParamDomainError,
)
from .rational import as_rational

__all__ = [
    "DEFAULT_ITER_CAP",
    "IterateBranch",
    "IteratedMap",
    "compose",
    "iterate",
    "min_slope",
    "minimal_expanding_iterate",
]

DEFAULT_ITER_CAP = 64


@dataclass(frozen=True)
class IterateBranch:
    """A maximal affine piece of an iterate, tagged with its itinerary word."""

    itinerary: str
    domain_lo: Fraction
    domain_hi: Fraction
    lo_closed: bool
    hi_closed: bool
    slope: Fraction
    intercept: Fraction

    def __post_init__(self) -> None:
        if not self.domain_lo < self.domain_hi:
            raise ParamDomainError("degenerate iterate piece")
        if any(ch not in "LR" for ch in self.itinerary) or not self.itinerary:
            raise ParamDomainError(f"bad itinerary word {self.itinerary!r}")

    def __call__(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept

    @property
    def width(self) -> Fraction:
        return self.domain_hi - self.domain_lo

    @property
    def image_lo(self) -> Fraction:
        return self(self.domain_lo)

    @property
    def image_hi(self) -> Fraction:
        return self(self.domain_hi)

    @property
    def expansions(self) -> int:
        """Number of expanding steps (letter L) along the word."""
        return self.itinerary.count("L")

    @property
    def contractions(self) -> int:
        """Number of contracting steps (letter R) along the word."""
        return self.itinerary.count("R")


@dataclass(frozen=True)
class IteratedMap:
    """The N-fold composition of a base map, stored branch by branch."""

    base: PiecewiseLinearMap
    n: int
    branches: tuple[IterateBranch, ...]

    def __post_init__(self) -> None:
        branches = tuple(self.branches)
        object.__setattr__(self, "branches", branches)
        if not isinstance(self.n, int) or self.n < 1:
            raise ParamDomainError("iterate order n must be a positive integer")
        if not branches or branches[0].domain_lo != ZERO or branches[-1].domain_hi != ONE:
            raise ParamDomainError("iterate branches must cover [0, 1]")
        words = set()
        for branch in branches:
            if len(branch.itinerary) != self.n:
                raise ParamDomainError("every itinerary must have length n")
            words.add(branch.itinerary)
        if len(words) != len(branches):
            raise ParamDomainError("itinerary words must be unique")
        for left, right in zip(branches, branches[1:]):
            if left.domain_hi != right.domain_lo or right.lo_closed:
                raise ParamDomainError("iterate branches must tile [0, 1], right-closed")

    def branch_at(self, x) -> IterateBranch:
        """Branch containing x; breakpoints resolve to the left piece."""
        x = as_rational(x)
        if not ZERO <= x <= ONE:
            raise OutOfDomainError(f"{x} lies outside [0, 1]")
        his = [branch.domain_hi for branch in self.branches]
        return self.branches[bisect_left(his, x)]

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        return self.branch_at(x)(x)


def _as_iterated(m) -> IteratedMap:
    if isinstance(m, IteratedMap):
        return m
    if isinstance(m, PiecewiseLinearMap):
        branches = tuple(
            IterateBranch(
                itinerary=b.label,
                domain_lo=b.domain_lo,
                domain_hi=b.domain_hi,
                lo_closed=b.lo_closed,
                hi_closed=b.hi_closed,
                slope=b.slope,
                intercept=b.intercept,
            )
            for b in m.branches
        )
        return IteratedMap(base=m, n=1, branches=branches)
    raise TypeError(f"expected a map or iterated map, got {type(m).__name__}")


def compose(outer, inner) -> IteratedMap:
    """Exact composition outer(inner(x)) (inner applies first, words
    concatenate inner word first).

    Both arguments may be a base map or an iterate of the same base map;
    anything else raises BaseMismatchError.
    """
    o = _as_iterated(outer)
    i = _as_iterated(inner)
    if o.base != i.base:
        raise BaseMismatchError("cannot compose iterates of different base maps")
    cut_images = [b.domain_hi for b in o.branches[:-1]]
    pieces = []
    for ib in i.branches:
        sigma, tau = ib.slope, ib.intercept
        cuts = sorted(
            x
            for x in ((t - tau) / sigma for t in cut_images)
            if ib.domain_lo < x < ib.domain_hi
        )
        bounds = [ib.domain_lo, *cuts, ib.domain_hi]
        for k in range(len(bounds) - 1):
            lo, hi = bounds[k], bounds[k + 1]
            # select the outer branch by an interior image point: boundary
            # images may sit exactly on an outer breakpoint
            ob = o.branch_at(sigma * (lo + hi) / 2 + tau)
            pieces.append(
                IterateBranch(
                    itinerary=ib.itinerary + ob.itinerary,
                    domain_lo=lo,
                    domain_hi=hi,
                    lo_closed=ib.lo_closed and k == 0,
                    hi_closed=True,
                    slope=ob.slope * sigma,
                    intercept=ob.slope * tau + ob.intercept,
                )
            )
    return IteratedMap(base=i.base, n=i.n + o.n, branches=tuple(pieces))


def iterate(m: PiecewiseLinearMap, n: int, cap: int = DEFAULT_ITER_CAP) -> IteratedMap:
    """The n-fold composition of m; iterate(m, 1) mirrors m's two branches."""
    if not isinstance(n, int) or n < 1:
        raise ParamDomainError("iteration count must be a positive integer")
    if n > cap:
        raise CapExceededError(f"N = {n} exceeds the iteration cap {cap}")
    result = _as_iterated(m)
    step = result
    for _ in range(n - 1):
        result = compose(step, result)
    return result


def min_slope(im) -> Fraction:
    """Exact minimum branch slope; the iterate is expanding iff this exceeds 1."""
    return min(b.slope for b in _as_iterated(im).branches)


def minimal_expanding_iterate(m: PiecewiseLinearMap, cap: int = DEFAULT_ITER_CAP) -> int:
    """Smallest N <= cap with every branch slope of the N-th iterate > 1.

    Slope exactly 1 does not count as expanding.  Raises
    NotFoundWithinCapError (carrying the best minimum slope seen) when no
    such N exists below the cap; that signals the cap is too small, nothing
    more.
    """
    if not isinstance(cap, int) or cap < 1:
        raise ParamDomainError("cap must be a positive integer")
    step = _as_iterated(m)
    current = None
    best_n, best = 1, None
    for n in range(1, cap + 1):
        current = step if current is None else compose(step, current)
        slope = min_slope(current)
        if slope > 1:
            return n
        if best is None or slope > best:
            best, best_n = slope, n
    raise NotFoundWithinCapError(cap, best_n, best)
