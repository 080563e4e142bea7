"""Integer-exact expansion bounds for the pinned two-branch family.

For parameters p > 1 and 0 < s < 1, any composition word whose net slope
p^m s^n stays at or below 1 is forced (as words grow) to contain at least
`lower_L` consecutive contracting steps, while the forward orbit of 1 shows
that at most `upper_U` consecutive contracting steps are ever admissible.
`lower_L > upper_U` holds for every valid parameter pair, which is exactly
why every such map is eventually expanding.

Floors and ceilings of the underlying logarithm ratios are computed by
exact rational power loops, never by floating logarithms: at exact integer
boundaries (for example p = 3, s = 1/2) the floating floor formula
overstates j_max by one.  The report keeps a `float_floor_discrepancy` flag
so those cases stay visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import ONE, PiecewiseLinearMap
from .errors import CapExceededError, ParamDomainError
from .rational import as_rational

__all__ = [
    "DEFAULT_ORBIT_CAP",
    "BoundsReport",
    "OrbitTrace",
    "bounds_report",
    "forced_consecutive_contractions",
    "net_expansion",
    "orbit_of_one",
    "right_branch_closed_form",
]

DEFAULT_ORBIT_CAP = 10_000


@dataclass(frozen=True)
class BoundsReport:
    """All scalar expansion bounds for one parameter pair.

    `c` is a floating-point convenience value for reports; every integer
    field is computed exactly.  `upper_U` is always `j_max + 1`, and
    `inequality_holds` (lower_L > upper_U) is true for every valid pair.
    """

    p: Fraction
    s: Fraction
    c: float
    lower_L: int
    j_max: int
    upper_U: int
    inequality_holds: bool
    float_floor_discrepancy: bool


@dataclass(frozen=True)
class OrbitTrace:
    """Exact forward orbit with branch labels; labels[i] is R iff points[i] > d."""

    points: tuple[Fraction, ...]
    labels: str
    initial_R_run: int


def net_expansion(p, s, m: int, n: int) -> Fraction:
    """Exact p^m * s^n; at or below 1 means a length-(m+n) word contracts."""
    p = as_rational(p)
    s = as_rational(s)
    if not isinstance(m, int) or not isinstance(n, int) or m < 0 or n < 0:
        raise ParamDomainError("exponents m, n must be nonnegative integers")
    return p**m * s**n


def forced_consecutive_contractions(m: int, n: int) -> int:
    """ceil(n / (m + 1)): with m expansions and n contractions in a word,
    some run of contractions must be at least this long (pigeonhole)."""
    if not isinstance(m, int) or not isinstance(n, int) or m < 0 or n < 0:
        raise ParamDomainError("letter counts m, n must be nonnegative integers")
    return (n + m) // (m + 1)


def _ln(x: Fraction) -> float:
    # big-integer safe: log(num) - log(den) instead of log(float(x))
    return math.log(x.numerator) - math.log(x.denominator)


def _min_power_not_above_one(p: Fraction, s: Fraction) -> int:
    """min{j >= 0 : p * s^j <= 1}, by an incremental integer power loop."""
    num, den = p.numerator, p.denominator
    sn, sd = s.numerator, s.denominator
    j = 0
    while num > den:
        num *= sn
        den *= sd
        j += 1
    return j


def _max_power_above_one(q: Fraction, s: Fraction) -> int:
    """max{j >= 0 : q * s^j > 1} for q > 1, by the same kind of loop."""
    num, den = q.numerator * s.numerator, q.denominator * s.denominator
    j = 0
    while num > den:  # invariant: q * s^(j+1) > 1 still holds
        num *= s.numerator
        den *= s.denominator
        j += 1
    return j


def bounds_report(p, s) -> BoundsReport:
    """Compute every expansion bound for (p, s), exactly where it matters.

    lower_L = 1 + min{j >= 0 : p*s^j <= 1}  (the ceiling of 1 - ln p/ln s);
    j_max   = max{j >= 0 : s^j*(p*(1-s)+s) > 1}, the last step at which the
    orbit of 1 is still on the contracting branch; upper_U = j_max + 1.
    Both integer quantities come from rational power loops with strict
    comparisons, so boundary pairs where the logarithm ratio is an exact
    integer are handled correctly; the floating floor formula's value is
    compared and any disagreement is flagged.
    """
    p = as_rational(p)
    s = as_rational(s)
    if not p > 1:
        raise ParamDomainError("p must exceed 1")
    if not 0 < s < 1:
        raise ParamDomainError("s must lie strictly in (0, 1)")
    lower_l = 1 + _min_power_not_above_one(p, s)
    q = p * (1 - s) + s  # > 1 whenever p > 1 and s < 1
    j_max = _max_power_above_one(q, s)
    upper_u = j_max + 1
    ln_p, ln_s, ln_q = _ln(p), _ln(s), _ln(q)
    c = -ln_s / (ln_p - ln_s)
    float_floor = math.floor(-ln_q / ln_s)
    return BoundsReport(
        p=p,
        s=s,
        c=c,
        lower_L=lower_l,
        j_max=j_max,
        upper_U=upper_u,
        inequality_holds=lower_l > upper_u,
        float_floor_discrepancy=float_floor != j_max,
    )


def right_branch_closed_form(p, s, j: int, x) -> Fraction:
    """Value of j formal contracting steps from x: s^j*x - (s/p)*(1-s^j)/(1-s).

    The formula is applied regardless of admissibility; a result outside
    [0, 1] certifies that j consecutive contracting steps from x are not
    actually possible.
    """
    p = as_rational(p)
    s = as_rational(s)
    x = as_rational(x)
    if not isinstance(j, int) or j < 0:
        raise ParamDomainError("j must be a nonnegative integer")
    if s == 1 or p == 0:
        raise ParamDomainError("closed form needs s != 1 and p != 0")
    s_j = s**j
    return s_j * x - (s / p) * ((1 - s_j) / (1 - s))


def orbit_of_one(m: PiecewiseLinearMap, steps: int, cap: int = DEFAULT_ORBIT_CAP) -> OrbitTrace:
    """Exact orbit of x = 1 with branch labels.

    The initial run of R labels realises the maximal admissible count of
    consecutive contracting steps, so it always equals upper_U for the
    pinned family.
    """
    if not isinstance(steps, int) or steps < 1:
        raise ParamDomainError("steps must be a positive integer")
    if steps > cap:
        raise CapExceededError(f"steps = {steps} exceeds the orbit cap {cap}")
    points = [ONE]
    labels = []
    for _ in range(steps):
        branch = m.branch_at(points[-1])
        labels.append(branch.label)
        points.append(branch(points[-1]))
    word = "".join(labels)
    run = len(word) - len(word.lstrip("R"))
    return OrbitTrace(points=tuple(points), labels=word, initial_R_run=run)
