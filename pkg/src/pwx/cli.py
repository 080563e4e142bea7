"""Command-line front door: one subcommand per analysis.

Subcommands: bounds, min-n, iterate, orbit, exactness, ulam, sweep.
Human-readable reports go to stdout (rationals as `num/den`, floats with 12
significant digits); every subcommand takes `--csv PATH` for delimited
output with `.` decimal separators and LF newlines, suitable for plotting
tools.  No plotting engine is embedded.

Exit codes: 0 success, 1 usage error, 2 invalid input or validation error,
3 internal invariant violation (a parameter pair where the expansion
inequality fails would be one; no valid pair can trigger it).

`PWX_ITER_CAP` overrides the default iteration cap of 64 wherever a --cap
flag is not given.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .bounds import bounds_report, orbit_of_one
from .core import PiecewiseLinearMap, build_paper_map
from .errors import NotFoundWithinCapError, ParamDomainError, PwxError
from .exactness import IntervalSet, evolve_until_full, stationary_density, ulam_matrix
from .iteration import DEFAULT_ITER_CAP, iterate, min_slope, minimal_expanding_iterate
from .mapfile import parse_mapfile
from .rational import parse_rational

__all__ = ["SWEEP_CSV_HEADER", "SweepRow", "main", "run", "sweep"]

ITER_CAP_ENV = "PWX_ITER_CAP"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3

SWEEP_CSV_HEADER = ["p", "s", "c", "lower_L", "j_max", "upper_U", "holds", "minimal_N"]


class _UsageError(Exception):
    pass


class _InvariantViolation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage problems, not argparse's 2
        raise _UsageError(message)


@dataclass(frozen=True)
class SweepRow:
    p: Fraction
    s: Fraction
    c: float
    lower_L: int
    j_max: int
    upper_U: int
    inequality_holds: bool
    minimal_N: int | None


def sweep(p_values, s_values, cap, *, skip_invalid=False, workers=1, warn=None) -> list[SweepRow]:
    """One row per (p, s), p-major then s, deterministic across worker counts.

    Invalid pairs abort unless skip_invalid is set, in which case they are
    reported through `warn` and skipped.  A row with a failed expansion
    inequality raises an internal invariant violation: no valid pair can
    produce one.
    """
    pairs = [(p, s) for p in p_values for s in s_values]

    def compute(pair):
        p, s = pair
        try:
            report = bounds_report(p, s)
            the_map = build_paper_map(p, s)
        except ParamDomainError as exc:
            if skip_invalid:
                return exc
            raise
        try:
            minimal_n = minimal_expanding_iterate(the_map, cap)
        except NotFoundWithinCapError:
            minimal_n = None
        return SweepRow(
            p=report.p,
            s=report.s,
            c=report.c,
            lower_L=report.lower_L,
            j_max=report.j_max,
            upper_U=report.upper_U,
            inequality_holds=report.inequality_holds,
            minimal_N=minimal_n,
        )

    if workers <= 1:
        results = [compute(pair) for pair in pairs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(compute, pairs))

    rows = []
    for pair, result in zip(pairs, results):
        if isinstance(result, Exception):
            if warn is not None:
                warn(f"skipping p={pair[0]} s={pair[1]}: {result}")
            continue
        if not result.inequality_holds:
            raise _InvariantViolation(
                f"expansion inequality failed at p={result.p} s={result.s}: "
                f"lower_L={result.lower_L} <= upper_U={result.upper_U}"
            )
        rows.append(result)
    return rows


# ---------------------------------------------------------------------------
# formatting helpers

def _dec(x) -> str:
    """Decimal rendering with 12 significant digits (CSV-friendly)."""
    return f"{float(x):.12g}"


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


def _domain_str(branch) -> str:
    left = "[" if branch.lo_closed else "("
    right = "]" if branch.hi_closed else ")"
    return f"{left}{branch.domain_lo}, {branch.domain_hi}{right}"


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


# ---------------------------------------------------------------------------
# argument plumbing

def _rat_arg(text: str, flag: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise _UsageError(f"{flag}: {exc}") from None


def _rat_list(text: str, flag: str) -> list[Fraction]:
    items = [piece.strip() for piece in text.split(",") if piece.strip()]
    if not items:
        raise _UsageError(f"{flag} needs at least one value")
    return [_rat_arg(piece, flag) for piece in items]


def _parse_set(text: str) -> IntervalSet:
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise _UsageError(f"--set: expected 'lo,hi' pairs separated by ';', got {chunk!r}")
        pairs.append((_rat_arg(parts[0], "--set"), _rat_arg(parts[1], "--set")))
    if not pairs:
        raise _UsageError("--set needs at least one 'lo,hi' interval")
    return IntervalSet(tuple(pairs))


def _add_map_args(parser) -> None:
    parser.add_argument("--map", metavar="FILE", help=".pwmap file describing the map")
    parser.add_argument("--p", metavar="RAT", help="expanding slope p > 1 (pinned family)")
    parser.add_argument("--s", metavar="RAT", help="contracting slope s in (0, 1) (pinned family)")


def _map_from_args(args) -> PiecewiseLinearMap:
    if args.map and (args.p or args.s):
        raise _UsageError("--map conflicts with --p/--s")
    if args.map:
        with open(args.map, encoding="utf-8") as fh:
            return parse_mapfile(fh.read()).build()
    if args.p is None or args.s is None:
        raise _UsageError("need either --map FILE or both --p and --s")
    return build_paper_map(_rat_arg(args.p, "--p"), _rat_arg(args.s, "--s"))


def _iter_cap(args) -> int:
    if getattr(args, "cap", None) is not None:
        if args.cap < 1:
            raise _UsageError("--cap must be a positive integer")
        return args.cap
    env = os.environ.get(ITER_CAP_ENV)
    if env is not None and env != "":
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"{ITER_CAP_ENV} must be an integer, got {env!r}") from None
        if value < 1:
            raise ValueError(f"{ITER_CAP_ENV} must be positive, got {value}")
        return value
    return DEFAULT_ITER_CAP


# ---------------------------------------------------------------------------
# subcommands

def _cmd_bounds(args, out, err) -> int:
    report = bounds_report(_rat_arg(args.p, "--p"), _rat_arg(args.s, "--s"))
    if not report.inequality_holds:
        raise _InvariantViolation(
            f"expansion inequality failed at p={report.p} s={report.s}"
        )
    print(f"p = {report.p}", file=out)
    print(f"s = {report.s}", file=out)
    print(f"c = {_dec(report.c)}", file=out)
    print(f"lower_L = {report.lower_L}", file=out)
    print(f"j_max = {report.j_max}", file=out)
    print(f"upper_U = {report.upper_U}", file=out)
    print(f"holds = {_bool(report.inequality_holds)}", file=out)
    print(f"float_floor_discrepancy = {_bool(report.float_floor_discrepancy)}", file=out)
    if args.csv:
        _write_csv(
            args.csv,
            ["p", "s", "c", "lower_L", "j_max", "upper_U", "holds"],
            [[_dec(report.p), _dec(report.s), _dec(report.c), report.lower_L,
              report.j_max, report.upper_U, _bool(report.inequality_holds)]],
        )
    return EXIT_OK


def _cmd_min_n(args, out, err) -> int:
    the_map = _map_from_args(args)
    minimal_n = minimal_expanding_iterate(the_map, _iter_cap(args))
    print(minimal_n, file=out)
    if args.csv:
        _write_csv(
            args.csv,
            ["p", "s", "cap", "minimal_N"],
            [[_dec(the_map.p), _dec(the_map.s), _iter_cap(args), minimal_n]],
        )
    return EXIT_OK


def _cmd_iterate(args, out, err) -> int:
    the_map = _map_from_args(args)
    iterated = iterate(the_map, args.n, cap=_iter_cap(args))
    print(f"N = {iterated.n}", file=out)
    print(f"branches = {len(iterated.branches)}", file=out)
    print(f"min_slope = {min_slope(iterated)}", file=out)
    rows = [
        (b.itinerary, _domain_str(b), str(b.slope), str(b.intercept))
        for b in iterated.branches
    ]
    headers = ("itinerary", "domain", "slope", "intercept")
    widths = [max(len(h), *(len(r[col]) for r in rows)) for col, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(), file=out)
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip(), file=out)
    if args.csv:
        _write_csv(
            args.csv,
            ["itinerary", "lo", "hi", "slope", "intercept"],
            [[b.itinerary, _dec(b.domain_lo), _dec(b.domain_hi), _dec(b.slope), _dec(b.intercept)]
             for b in iterated.branches],
        )
    return EXIT_OK


def _cmd_orbit(args, out, err) -> int:
    the_map = _map_from_args(args)
    trace = orbit_of_one(the_map, args.steps)
    print("points = " + " ".join(str(x) for x in trace.points), file=out)
    print(f"labels = {trace.labels}", file=out)
    print(f"initial_R_run = {trace.initial_R_run}", file=out)
    if args.csv:
        labels = list(trace.labels) + [""]
        _write_csv(
            args.csv,
            ["step", "point", "label"],
            [[step, _dec(point), label]
             for step, (point, label) in enumerate(zip(trace.points, labels))],
        )
    return EXIT_OK


def _cmd_exactness(args, out, err) -> int:
    the_map = _map_from_args(args)
    trace = evolve_until_full(the_map, _parse_set(args.set), args.cap)
    for n, measure in trace.steps:
        print(f"n = {n}  measure = {measure}", file=out)
    if trace.n_full is None:
        print(f"n_full = - (not full within cap {args.cap})", file=out)
    else:
        print(f"n_full = {trace.n_full}", file=out)
    if args.csv:
        _write_csv(
            args.csv,
            ["n", "measure"],
            [[n, _dec(measure)] for n, measure in trace.steps],
        )
    return EXIT_OK


def _cmd_ulam(args, out, err) -> int:
    the_map = _map_from_args(args)
    matrix = ulam_matrix(the_map, args.k)
    result = stationary_density(matrix, tol=args.tol, max_iter=args.max_iter)
    print(f"k = {matrix.k}", file=out)
    rows_exact = all(matrix.row_sum(i) == 1 for i in range(matrix.k))
    print(f"row_sums_exact = {_bool(rows_exact)}", file=out)
    if matrix.k <= 12:
        print("matrix =", file=out)
        for i in range(matrix.k):
            print("  " + " ".join(str(matrix.entry(i, j)) for j in range(matrix.k)), file=out)
        print("masses = " + " ".join(_dec(x) for x in result.masses), file=out)
    else:
        values = result.density.values
        print(f"density_min = {_dec(min(values))}", file=out)
        print(f"density_max = {_dec(max(values))}", file=out)
    print(f"residual = {_dec(result.residual)}", file=out)
    print(f"iterations = {result.iterations}", file=out)
    print(f"converged = {_bool(result.converged)}", file=out)
    if args.csv:
        k = matrix.k
        _write_csv(
            args.csv,
            ["cell", "lo", "hi", "mass", "density"],
            [[i, _dec(Fraction(i, k)), _dec(Fraction(i + 1, k)),
              _dec(result.masses[i]), _dec(result.density.values[i])]
             for i in range(k)],
        )
    return EXIT_OK


def _cmd_sweep(args, out, err) -> int:
    p_values = _rat_list(args.p, "--p")
    s_values = _rat_list(args.s, "--s")
    if args.workers < 1:
        raise _UsageError("--workers must be a positive integer")
    rows = sweep(
        p_values,
        s_values,
        _iter_cap(args),
        skip_invalid=args.skip_invalid,
        workers=args.workers,
        warn=lambda message: print(f"warning: {message}", file=err),
    )
    print("p s c lower_L j_max upper_U holds minimal_N", file=out)
    for row in rows:
        minimal = "-" if row.minimal_N is None else str(row.minimal_N)
        print(
            f"{row.p} {row.s} {_dec(row.c)} {row.lower_L} {row.j_max} "
            f"{row.upper_U} {_bool(row.inequality_holds)} {minimal}",
            file=out,
        )
    if args.csv:
        _write_csv(
            args.csv,
            SWEEP_CSV_HEADER,
            [[_dec(row.p), _dec(row.s), _dec(row.c), row.lower_L, row.j_max,
              row.upper_U, _bool(row.inequality_holds),
              "-" if row.minimal_N is None else row.minimal_N]
             for row in rows],
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser and dispatch

def _build_parser() -> _Parser:
    parser = _Parser(
        prog="pwx",
        description="Exact analysis of two-branch piecewise-linear interval maps.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p_bounds = sub.add_parser("bounds", help="expansion/contraction bounds for (p, s)")
    p_bounds.add_argument("--p", required=True, metavar="RAT")
    p_bounds.add_argument("--s", required=True, metavar="RAT")
    p_bounds.add_argument("--csv", metavar="PATH")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_minn = sub.add_parser("min-n", help="smallest N whose N-th iterate is expanding")
    _add_map_args(p_minn)
    p_minn.add_argument("--cap", type=int, metavar="N")
    p_minn.add_argument("--csv", metavar="PATH")
    p_minn.set_defaults(func=_cmd_min_n)

    p_iter = sub.add_parser("iterate", help="dump the branch table of the N-th iterate")
    _add_map_args(p_iter)
    p_iter.add_argument("--n", type=int, required=True, metavar="N")
    p_iter.add_argument("--cap", type=int, metavar="N")
    p_iter.add_argument("--csv", metavar="PATH")
    p_iter.set_defaults(func=_cmd_iterate)

    p_orbit = sub.add_parser("orbit", help="exact forward orbit of x = 1")
    _add_map_args(p_orbit)
    p_orbit.add_argument("--steps", type=int, required=True, metavar="N")
    p_orbit.add_argument("--csv", metavar="PATH")
    p_orbit.set_defaults(func=_cmd_orbit)

    p_exact = sub.add_parser("exactness", help="evolve an interval set toward full measure")
    _add_map_args(p_exact)
    p_exact.add_argument("--set", required=True, metavar="SPEC",
                         help="intervals 'lo,hi' separated by ';'")
    p_exact.add_argument("--cap", type=int, default=256, metavar="N")
    p_exact.add_argument("--csv", metavar="PATH")
    p_exact.set_defaults(func=_cmd_exactness)

    p_ulam = sub.add_parser("ulam", help="Ulam matrix and stationary density")
    _add_map_args(p_ulam)
    p_ulam.add_argument("--k", type=int, default=1024, metavar="K")
    p_ulam.add_argument("--tol", type=float, default=1e-12)
    p_ulam.add_argument("--max-iter", type=int, default=100_000, dest="max_iter")
    p_ulam.add_argument("--csv", metavar="PATH")
    p_ulam.set_defaults(func=_cmd_ulam)

    p_sweep = sub.add_parser("sweep", help="bounds and minimal N over a parameter grid")
    p_sweep.add_argument("--p", required=True, metavar="LIST",
                         help="comma-separated p values")
    p_sweep.add_argument("--s", required=True, metavar="LIST",
                         help="comma-separated s values")
    p_sweep.add_argument("--cap", type=int, metavar="N")
    p_sweep.add_argument("--skip-invalid", action="store_true", dest="skip_invalid")
    p_sweep.add_argument("--workers", type=int, default=1, metavar="W")
    p_sweep.add_argument("--csv", metavar="PATH")
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def run(argv=None, *, stdout=None, stderr=None) -> int:
    """Dispatch a command line; returns the process exit code."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except _InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=err)
        return EXIT_INVARIANT
    except (PwxError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
