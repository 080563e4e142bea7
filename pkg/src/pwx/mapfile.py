""".pwmap files: a small line-oriented `key = value` format for maps.

Keys are family, p, s, a, b, d.  `family = paper` pins a = 0, b = -s/p and
d = 1/p, so supplying a, b or d alongside it is rejected; `family = classF`
requires all six keys.  Values are rational literals (`2`, `-1/4`, `0.9`);
decimals are read in base 10, exactly.  `#` starts a comment, blank lines
are ignored, duplicate or unknown keys are errors.  Files are UTF-8 with LF
newlines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .core import PiecewiseLinearMap, build_class_f_map, build_paper_map
from .errors import (
    DuplicateKeyError,
    MapfileSyntaxError,
    MissingKeyError,
    ParamDomainError,
)
from .rational import as_rational, parse_rational

__all__ = ["FAMILIES", "KEYS", "MapSpec", "emit_mapfile", "parse_mapfile"]

KEYS = ("family", "p", "s", "a", "b", "d")
FAMILIES = ("paper", "classF")

_KEY_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class MapSpec:
    """Parsed map description; building the actual map validates the values."""

    family: str
    p: Fraction
    s: Fraction
    a: Fraction | None = None
    b: Fraction | None = None
    d: Fraction | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ParamDomainError(f"family must be one of {FAMILIES}, got {self.family!r}")
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "s", as_rational(self.s))
        for name in ("a", "b", "d"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, as_rational(value))
        extras = tuple(getattr(self, name) for name in ("a", "b", "d"))
        if self.family == "paper" and any(v is not None for v in extras):
            raise ParamDomainError("family=paper determines a, b, d; do not supply them")
        if self.family == "classF" and any(v is None for v in extras):
            raise ParamDomainError("family=classF requires a, b and d")

    def build(self) -> PiecewiseLinearMap:
        if self.family == "paper":
            return build_paper_map(self.p, self.s)
        return build_class_f_map(self.p, self.s, self.a, self.b, self.d)


def parse_mapfile(text: str) -> MapSpec:
    """Parse .pwmap text into a validated MapSpec.

    Raises MapfileSyntaxError (with 1-based line/column), MissingKeyError or
    DuplicateKeyError for structural problems; value-domain problems surface
    from the delegated map construction (ParamDomainError et al).
    """
    found: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise MapfileSyntaxError(lineno, 1, "expected 'key = value'")
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        value = value_part.strip()
        key_col = raw.find(key) + 1 if key else 1
        if not key or not _KEY_RE.match(key):
            raise MapfileSyntaxError(lineno, key_col, f"bad key {key!r}")
        if key not in KEYS:
            raise MapfileSyntaxError(lineno, key_col, f"unknown key {key!r}")
        if key in found:
            raise DuplicateKeyError(key, f"duplicate key '{key}' on line {lineno}")
        value_col = line.index("=") + 2 + (len(value_part) - len(value_part.lstrip()))
        if not value:
            raise MapfileSyntaxError(lineno, value_col, f"missing value for '{key}'")
        if key == "family":
            if value not in FAMILIES:
                raise MapfileSyntaxError(
                    lineno, value_col, f"family must be 'paper' or 'classF', got {value!r}"
                )
            found[key] = value
        else:
            try:
                found[key] = parse_rational(value)
            except ValueError as exc:
                raise MapfileSyntaxError(lineno, value_col, str(exc)) from None
    if "family" not in found:
        raise MissingKeyError("family")
    family = found["family"]
    for key in ("p", "s"):
        if key not in found:
            raise MissingKeyError(key)
    if family == "paper":
        for key in ("a", "b", "d"):
            if key in found:
                raise DuplicateKeyError(
                    key, f"key '{key}' is determined by family=paper and may not be supplied"
                )
    else:
        for key in ("a", "b", "d"):
            if key not in found:
                raise MissingKeyError(key)
    spec = MapSpec(
        family=family,
        p=found["p"],
        s=found["s"],
        a=found.get("a"),
        b=found.get("b"),
        d=found.get("d"),
    )
    spec.build()  # delegated value validation
    return spec


def emit_mapfile(spec: MapSpec) -> str:
    """Canonical form: fixed key order, `num/den` in lowest terms, LF-terminated.

    parse(emit(spec)) == spec, and emit is idempotent on its own output.
    """
    lines = [f"family = {spec.family}", f"p = {spec.p}", f"s = {spec.s}"]
    if spec.family == "classF":
        lines.extend([f"a = {spec.a}", f"b = {spec.b}", f"d = {spec.d}"])
    return "\n".join(lines) + "\n"
