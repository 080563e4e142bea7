"""Independent oracles used to cross-check the library.

Everything here deliberately avoids the library's composition machinery:
iterate branches are recovered by brute-force enumeration of letter words
with forward constraint propagation, and iterate values by literally
applying the base map N times.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

ZERO = Fraction(0)
ONE = Fraction(1)


def word_domain(m, word):
    """Closed hull of {x : the orbit of x follows `word`}, or None if empty.

    Tracks the affine composition (alpha, beta) so far and intersects the
    pullback of each step's branch domain; single points count as empty.
    """
    lo, hi = ZERO, ONE
    alpha, beta = ONE, ZERO
    for letter in word:
        branch = m.branches[0] if letter == "L" else m.branches[1]
        # need alpha*x + beta inside the branch domain
        lo = max(lo, (branch.domain_lo - beta) / alpha)
        hi = min(hi, (branch.domain_hi - beta) / alpha)
        if lo >= hi:
            return None
        alpha, beta = branch.slope * alpha, branch.slope * beta + branch.intercept
    return lo, hi, alpha, beta


def enum_word_branches(m, n):
    """All nonempty length-n words with their domains, slopes and intercepts,
    sorted by domain position."""
    out = []
    for letters in product("LR", repeat=n):
        word = "".join(letters)
        result = word_domain(m, word)
        if result is not None:
            lo, hi, slope, intercept = result
            out.append((word, lo, hi, slope, intercept))
    out.sort(key=lambda item: item[1])
    return out


def min_slope_by_enumeration(m, n):
    return min(slope for _, _, _, slope, _ in enum_word_branches(m, n))


def minimal_expanding_by_enumeration(m, cap):
    for n in range(1, cap + 1):
        if min_slope_by_enumeration(m, n) > 1:
            return n
    return None


def nfold_eval(m, x, n):
    """Literal n-fold application of the base map."""
    for _ in range(n):
        x = m(x)
    return x


def manual_right_branch(p, s, j, x):
    """j literal applications of y -> s*y - s/p, no closed form."""
    y = x
    for _ in range(j):
        y = s * y - s / p
    return y


def longest_r_run(word: str) -> int:
    return max((len(chunk) for chunk in word.split("L")), default=0)


def rand_fraction(rng, lo: Fraction, hi: Fraction, max_den: int = 64) -> Fraction:
    """A random rational strictly inside (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    while True:
        den = rng.randint(2, max_den)
        num_lo = math.floor(lo * den) + 1
        num_hi = math.ceil(hi * den) - 1
        if num_lo <= num_hi:
            return Fraction(rng.randint(num_lo, num_hi), den)


def rand_unit_fraction(rng, max_den: int = 64) -> Fraction:
    """A random rational in [0, 1] (endpoints included)."""
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)
