"""Exact rational scalars.

Every map coefficient, breakpoint and orbit point in this package is a
`fractions.Fraction`: arbitrary-precision numerator, positive denominator,
always in lowest terms.  Decimal strings such as "0.9" are read in base 10
(9/10 exactly), never through binary floating point, and float inputs are
refused outright so no rounding can sneak into a computation.
"""

from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction

Rational = Fraction

# int, int/int, or finite decimal; no exponents, no whitespace inside
_LITERAL = re.compile(r"[+-]?\d+(?:/(\d+)|\.\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse an `int`, `int/int` or exact-decimal literal ("2", "-1/4", "0.9")."""
    stripped = text.strip()
    match = _LITERAL.match(stripped)
    if match is None:
        raise ValueError(f"not a rational literal: {text!r}")
    denominator = match.group(1)
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(stripped)


def as_rational(value) -> Fraction:
    """Coerce int/str/Decimal/Fraction to Fraction; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError(
            f"refusing float {value!r}: pass a string or Fraction to stay exact"
        )
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")
