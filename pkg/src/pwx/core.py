"""Two-branch piecewise-linear interval maps in exact rational arithmetic.

A map in this family sends [0, 1] into itself with an expanding branch
(slope p > 1, label L) on [0, d] followed by a contracting branch (slope s
in (0, 1), label R) on (d, 1].  Everything is `fractions.Fraction`; no
floating point enters construction or evaluation, which is what keeps the
branch enumeration of iterates downstream exact.

Endpoint semantics: the breakpoint d belongs to the left piece, so x = d
evaluates through the expanding branch.  Closure flags are stored per
branch and honoured by evaluation and by every orbit computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OutOfDomainError, ParamDomainError, RangeViolationError
from .rational import as_rational

__all__ = [
    "AffineBranch",
    "PiecewiseLinearMap",
    "build_class_f_map",
    "build_paper_map",
]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class AffineBranch:
    """One affine piece x -> slope*x + intercept on its domain interval."""

    label: str
    domain_lo: Fraction
    domain_hi: Fraction
    lo_closed: bool
    hi_closed: bool
    slope: Fraction
    intercept: Fraction

    def __post_init__(self) -> None:
        if self.label not in ("L", "R"):
            raise ParamDomainError(f"branch label must be 'L' or 'R', got {self.label!r}")
        if not self.domain_lo < self.domain_hi:
            raise ParamDomainError("degenerate branch: need domain_lo < domain_hi")
        if self.slope == 0:
            raise ParamDomainError("branch slope must be nonzero")
        for x in (self.domain_lo, self.domain_hi):
            y = self.slope * x + self.intercept
            if not ZERO <= y <= ONE:
                raise RangeViolationError(f"image endpoint f({x}) = {y} leaves [0, 1]")

    def __call__(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept

    @property
    def width(self) -> Fraction:
        return self.domain_hi - self.domain_lo

    @property
    def image_lo(self) -> Fraction:
        """Lower image endpoint (branches here always have positive slope)."""
        return self(self.domain_lo)

    @property
    def image_hi(self) -> Fraction:
        return self(self.domain_hi)

    def contains(self, x: Fraction) -> bool:
        if x < self.domain_lo or x > self.domain_hi:
            return False
        if x == self.domain_lo:
            return self.lo_closed
        if x == self.domain_hi:
            return self.hi_closed
        return True


def validate_tiling(branches) -> None:
    """Check that branch domains tile [0, 1] with right-closed pieces.

    Adjacent domains must share endpoints exactly; the first piece is closed
    at 0, every piece is closed on the right, and interior left endpoints
    are open (each breakpoint belongs to the piece on its left).
    """
    if not branches:
        raise ParamDomainError("a map needs at least one branch")
    if branches[0].domain_lo != ZERO or not branches[0].lo_closed:
        raise ParamDomainError("first branch must start closed at 0")
    if branches[-1].domain_hi != ONE:
        raise ParamDomainError("last branch must end at 1")
    for left, right in zip(branches, branches[1:]):
        if left.domain_hi != right.domain_lo:
            raise ParamDomainError(
                f"branch domains must tile: gap or overlap at {left.domain_hi} vs {right.domain_lo}"
            )
        if right.lo_closed:
            raise ParamDomainError("interior breakpoints belong to the left piece")
    for branch in branches:
        if not branch.hi_closed:
            raise ParamDomainError("every branch must be closed on the right")


@dataclass(frozen=True)
class PiecewiseLinearMap:
    """Ordered affine branches tiling [0, 1]: expanding L then contracting R."""

    branches: tuple[AffineBranch, ...]
    p: Fraction
    s: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        branches = tuple(self.branches)
        object.__setattr__(self, "branches", branches)
        validate_tiling(branches)
        if len(branches) != 2 or branches[0].label != "L" or branches[1].label != "R":
            raise ParamDomainError("expected exactly two branches ordered L then R")
        left, right = branches
        if not left.slope > 1:
            raise ParamDomainError("left branch slope p must exceed 1")
        if not ZERO < right.slope < ONE:
            raise ParamDomainError("right branch slope s must lie strictly in (0, 1)")
        if left.slope != self.p or right.slope != self.s or left.domain_hi != self.d:
            raise ParamDomainError("p, s, d must match the stored branch data")

    @property
    def left(self) -> AffineBranch:
        return self.branches[0]

    @property
    def right(self) -> AffineBranch:
        return self.branches[1]

    @property
    def a(self) -> Fraction:
        """Intercept of the expanding branch."""
        return self.left.intercept

    @property
    def b(self) -> Fraction:
        """Intercept of the contracting branch."""
        return self.right.intercept

    def branch_at(self, x) -> AffineBranch:
        """Branch whose domain contains x; breakpoints resolve to the left piece."""
        x = as_rational(x)
        if not ZERO <= x <= ONE:
            raise OutOfDomainError(f"{x} lies outside [0, 1]")
        for branch in self.branches:
            if x <= branch.domain_hi:
                return branch
        raise AssertionError("unreachable: branches tile [0, 1]")

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        return self.branch_at(x)(x)


def build_class_f_map(p, s, a, b, d) -> PiecewiseLinearMap:
    """Assemble and validate f(x) = p*x + a on [0, d], s*x + b on (d, 1].

    Raises ParamDomainError when p <= 1, s is outside (0, 1) or d is outside
    (0, 1); raises RangeViolationError when any image endpoint leaves [0, 1].
    Degenerate d in {0, 1} is rejected rather than special-cased.
    """
    p, s, a, b, d = (as_rational(v) for v in (p, s, a, b, d))
    if not p > 1:
        raise ParamDomainError("p must exceed 1")
    if not ZERO < s < ONE:
        raise ParamDomainError("s must lie strictly in (0, 1)")
    if not ZERO < d < ONE:
        raise ParamDomainError("d must lie strictly in (0, 1)")
    for x, y in ((ZERO, a), (d, p * d + a), (d, s * d + b), (ONE, s + b)):
        if not ZERO <= y <= ONE:
            raise RangeViolationError(f"image endpoint f({x}) = {y} leaves [0, 1]")
    branches = (
        AffineBranch("L", ZERO, d, True, True, p, a),
        AffineBranch("R", d, ONE, False, True, s, b),
    )
    return PiecewiseLinearMap(branches, p=p, s=s, d=d)


def build_paper_map(p, s) -> PiecewiseLinearMap:
    """Build the pinned `paper` family: a = 0, b = -s/p, d = 1/p.

    The expanding branch is onto [0, 1] and the contracting branch image is
    (0, s*(1 - 1/p)], hugging the fixed point at 0.
    """
    p = as_rational(p)
    s = as_rational(s)
    if not p > 1:
        raise ParamDomainError("p must exceed 1")
    if not ZERO < s < ONE:
        raise ParamDomainError("s must lie strictly in (0, 1)")
    return build_class_f_map(p, s, ZERO, -s / p, ONE / p)
