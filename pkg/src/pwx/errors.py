"""Exception hierarchy shared across the package."""

from __future__ import annotations


class PwxError(Exception):
    """Base class for all errors raised by this package."""


class ParamDomainError(PwxError, ValueError):
    """A parameter lies outside its admissible domain."""


class RangeViolationError(PwxError, ValueError):
    """A branch image endpoint leaves the unit interval."""


class OutOfDomainError(PwxError, ValueError):
    """A point lies outside [0, 1]."""


class BaseMismatchError(PwxError, ValueError):
    """Composition was attempted across iterates of different base maps."""


class CapExceededError(PwxError):
    """A requested iteration or step count exceeds the configured cap."""


class NotFoundWithinCapError(PwxError):
    """No expanding iterate was found up to the cap.

    Carries the best (largest) minimum branch slope seen so callers can tell
    how close the search got.  Hitting this means the cap was too small, not
    that no expanding iterate exists.
    """

    def __init__(self, cap: int, best_n: int, best_min_slope) -> None:
        self.cap = cap
        self.best_n = best_n
        self.best_min_slope = best_min_slope
        super().__init__(
            f"no expanding iterate up to N = {cap}; "
            f"best min slope {best_min_slope} at N = {best_n}"
        )


class EmptyInputError(PwxError, ValueError):
    """An operation that needs positive measure received a null set."""


class MapfileError(PwxError, ValueError):
    """Base class for .pwmap parsing errors."""


class MapfileSyntaxError(MapfileError):
    """Malformed .pwmap content; carries a 1-based line and column."""

    def __init__(self, line: int, column: int, message: str) -> None:
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class MissingKeyError(MapfileError):
    def __init__(self, key: str) -> None:
        self.key = key
        super().__init__(f"missing required key '{key}'")


class DuplicateKeyError(MapfileError):
    def __init__(self, key: str, message: str | None = None) -> None:
        self.key = key
        super().__init__(message or f"duplicate key '{key}'")
