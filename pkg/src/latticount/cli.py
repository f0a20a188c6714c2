"""Command-line front end: ``latticount count|ehrhart|sigma|verify``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from importlib.metadata import PackageNotFoundError, version

from .dedekind import sigma_fast, sigma_naive
from .errors import InvalidModulus, InvalidPolygon, NotCoprime, ParseError
from .exact_core import format_rational, parse_rational
from .lattice_count import Mode, Path
from .polygon import count_boundary, count_closure, count_interior, ehrhart, parse_polygon_text, validate
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_POLYGON = 3
EXIT_RANGE = 4
EXIT_COPRIME = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:  # pragma: no cover
        return "unknown"


def _load(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    try:
        points = parse_polygon_text(text)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
    try:
        return validate(points)
    except InvalidPolygon as exc:
        raise CliError(EXIT_POLYGON, f"{path}: invalid polygon: {exc}") from None


def _dilation(text: str) -> int:
    try:
        value = parse_rational(text)
    except ParseError:
        raise CliError(EXIT_PARSE, f"cannot parse t={text!r}") from None
    if value.denominator != 1 or value < 1:
        raise CliError(EXIT_RANGE, f"t must be a positive integer, got {text}")
    return value.numerator


def cmd_count(args) -> int:
    P = _load(args.polygon)
    t = _dilation(args.t)
    mode = Mode(args.mode)
    fn = {Mode.CLOSURE: count_closure, Mode.INTERIOR: count_interior, Mode.BOUNDARY: count_boundary}[mode]
    n = fn(P, t)
    if args.json:
        print(json.dumps({"count": n, "mode": mode.value, "t": t, "path": Path.CLOSED_FORMULA.value}))
    else:
        print(n)
    return EXIT_OK


def cmd_ehrhart(args) -> int:
    qp = ehrhart(_load(args.polygon))
    print(json.dumps(qp.to_dict()) if args.json else qp.to_text())
    return EXIT_OK


def cmd_sigma(args) -> int:
    try:
        t = parse_rational(args.t)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    if args.b < 1:
        raise CliError(EXIT_RANGE, f"b must be >= 1, got {args.b}")
    try:
        value = sigma_naive(args.a, args.b, t) if args.naive else sigma_fast(args.a, args.b, t)
    except NotCoprime:
        raise CliError(
            EXIT_COPRIME, f"a={args.a} and b={args.b} are not coprime; the fast evaluator needs coprime arguments, try --naive"
        ) from None
    except InvalidModulus as exc:  # pragma: no cover - checked above
        raise CliError(EXIT_RANGE, str(exc)) from None
    print(format_rational(value))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise CliError(EXIT_RANGE, "--trials must be >= 1")
    if args.max_size < 1:
        raise CliError(EXIT_RANGE, "--max-size must be >= 1")
    if not 0 <= args.seed < 2**64:
        raise CliError(EXIT_RANGE, "--seed must be a 64-bit unsigned integer")
    report = run_suite(args.suite, args.trials, args.seed, args.max_size)
    print(f"suite {report.suite}: {report.passed}/{report.trials} pass")
    for note in report.notes:
        print(f"note: {note}")
    if report.max_deviation is not None:
        print(f"max deviation: {report.max_deviation:.3e}")
    if report.first_failure is not None:
        index, detail = report.first_failure
        print(f"first failure (trial {index}): {detail}")
        print(
            f"reproduce: latticount verify --suite {report.suite} --trials {index + 1}"
            f" --seed {args.seed} --max-size {args.max_size}"
        )
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticount", description="Exact lattice point counts in dilates of rational polygons."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count lattice points in t*P")
    p.add_argument("polygon", help="polygon file, one '<x> <y>' vertex per line")
    p.add_argument("t", help="positive integer dilation factor")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--closure", dest="mode", action="store_const", const="closure")
    group.add_argument("--interior", dest="mode", action="store_const", const="interior")
    group.add_argument("--boundary", dest="mode", action="store_const", const="boundary")
    p.add_argument("--json", action="store_true", help="print a JSON object")
    p.set_defaults(mode="closure", func=cmd_count)

    p = sub.add_parser("ehrhart", help="print the Ehrhart quasipolynomial of P")
    p.add_argument("polygon")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--text", dest="json", action="store_false")
    group.add_argument("--json", dest="json", action="store_true")
    p.set_defaults(json=False, func=cmd_ehrhart)

    p = sub.add_parser("sigma", help="evaluate the Dedekind-Rademacher sum sigma(a, b, t)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("t", help="rational, e.g. 3 or -5/2")
    p.add_argument("--naive", action="store_true", help="direct O(b) summation")
    p.set_defaults(func=cmd_sigma)
    # let "-5/2" through as a value rather than an unknown option
    p._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    p = sub.add_parser("verify", help="run a randomised verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=40)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"latticount: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
