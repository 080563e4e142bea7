"""Exact-arithmetic analysis of two-branch piecewise-linear interval maps.

The library covers four layers: exact map construction and evaluation
(`core`), iterate composition with itineraries (`iteration`), the integer
expansion bounds certifying eventual expansion (`bounds`), and mixing
diagnostics from exact set evolution to the Ulam invariant-density
approximation (`exactness`).  `mapfile` reads and writes the `.pwmap`
format and `cli` exposes everything as subcommands.
"""

from .bounds import (
    DEFAULT_ORBIT_CAP,
    BoundsReport,
    OrbitTrace,
    bounds_report,
    forced_consecutive_contractions,
    net_expansion,
    orbit_of_one,
    right_branch_closed_form,
)
from .core import (
    AffineBranch,
    PiecewiseLinearMap,
    build_class_f_map,
    build_paper_map,
)
from .errors import (
    BaseMismatchError,
    CapExceededError,
    DuplicateKeyError,
    EmptyInputError,
    MapfileError,
    MapfileSyntaxError,
    MissingKeyError,
    NotFoundWithinCapError,
    OutOfDomainError,
    ParamDomainError,
    PwxError,
    RangeViolationError,
)
from .exactness import (
    EvolutionTrace,
    IntervalSet,
    PiecewiseConstantDensity,
    StationaryResult,
    UlamMatrix,
    evolve_until_full,
    push_forward_set,
    stationary_density,
    transfer_density,
    ulam_matrix,
)
from .iteration import (
    DEFAULT_ITER_CAP,
    IterateBranch,
    IteratedMap,
    compose,
    iterate,
    min_slope,
    minimal_expanding_iterate,
)
from .mapfile import MapSpec, emit_mapfile, parse_mapfile
from .rational import Rational, as_rational, parse_rational

__version__ = "0.1.0"

__all__ = [
    "AffineBranch",
    "BaseMismatchError",
    "BoundsReport",
    "CapExceededError",
    "DEFAULT_ITER_CAP",
    "DEFAULT_ORBIT_CAP",
    "DuplicateKeyError",
    "EmptyInputError",
    "EvolutionTrace",
    "IntervalSet",
    "IterateBranch",
    "IteratedMap",
    "MapSpec",
    "MapfileError",
    "MapfileSyntaxError",
    "MissingKeyError",
    "NotFoundWithinCapError",
    "OrbitTrace",
    "OutOfDomainError",
    "ParamDomainError",
    "PiecewiseConstantDensity",
    "PiecewiseLinearMap",
    "PwxError",
    "RangeViolationError",
    "Rational",
    "StationaryResult",
    "UlamMatrix",
    "as_rational",
    "bounds_report",
    "build_class_f_map",
    "build_paper_map",
    "compose",
    "emit_mapfile",
    "evolve_until_full",
    "forced_consecutive_contractions",
    "iterate",
    "min_slope",
    "minimal_expanding_iterate",
    "net_expansion",
    "orbit_of_one",
    "parse_mapfile",
    "parse_rational",
    "push_forward_set",
    "right_branch_closed_form",
    "stationary_density",
    "transfer_density",
    "ulam_matrix",
]
