"""Command line front end.

Exit codes: 0 success (halted, all probed elements produced), 2 input
that does not parse, 3 a fuel budget ran out before an answer, 4 a
precondition violation (self transitions without --normalize, or a
rule set too large to print).

Program and machine arguments are file paths when such a file exists,
otherwise inline text; the name collatz picks the built-in Collatz
stream spec for translate and probe.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import compiler, fractran, streams, turing

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_FUEL = 3
EXIT_PRECONDITION = 4

DEFAULT_FUEL = 10**6


def _read_source(source: str) -> str:
    if os.path.isfile(source):
        with open(source, "r", encoding="utf-8") as fh:
            return fh.read()
    return source


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def cmd_run(args: argparse.Namespace) -> int:
    try:
        program = fractran.parse_program(_read_source(args.program))
        if args.n0 < 1:
            raise fractran.ZeroInput(f"start value must be >= 1, got {args.n0}")
        trace = fractran.run(program, args.n0, args.fuel)
    except fractran.FractranError as exc:
        _fail(str(exc))
        return EXIT_PARSE
    for line in fractran.render_trace(trace, factored=args.factored):
        print(line)
    if isinstance(trace.outcome, fractran.Halted):
        return EXIT_OK
    print(f"fuel exhausted after {args.fuel} steps", file=sys.stderr)
    return EXIT_FUEL


def cmd_primes(args: argparse.Namespace) -> int:
    if args.count == 0:
        return EXIT_OK
    found = 0
    for e in fractran.iter_power_of_two_exponents(
        fractran.PRIME_GAME, 2, args.fuel
    ):
        print(e)
        found += 1
        if found >= args.count:
            return EXIT_OK
    print(
        f"fuel exhausted after {args.fuel} steps with {found} exponents",
        file=sys.stderr,
    )
    return EXIT_FUEL


def cmd_compile_tm(args: argparse.Namespace) -> int:
    try:
        tm = turing.parse_tm(_read_source(args.machine))
    except turing.TuringError as exc:
        _fail(str(exc))
        return EXIT_PARSE
    if tm.has_self_transition():
        if not args.normalize:
            _fail("machine has self transitions; pass --normalize to split them")
            return EXIT_PRECONDITION
        tm = turing.normalize_no_self_loops(tm)
    print(compiler.render_compiled(compiler.compile(tm)), end="")
    return EXIT_OK


def _load_spec(source: str) -> streams.StreamSpec:
    if not os.path.isfile(source) and source == "collatz":
        return streams.collatz_spec()
    return streams.induce_spec(fractran.parse_program(_read_source(source)))


def cmd_translate(args: argparse.Namespace) -> int:
    try:
        spec = _load_spec(args.source)
    except fractran.FractranError as exc:
        _fail(str(exc))
        return EXIT_PARSE
    try:
        print(streams.emit_trs(spec), end="")
    except streams.SpecTooLarge as exc:
        _fail(str(exc))
        return EXIT_PRECONDITION
    return EXIT_OK


def cmd_probe(args: argparse.Namespace) -> int:
    try:
        spec = _load_spec(args.source)
    except fractran.FractranError as exc:
        _fail(str(exc))
        return EXIT_PARSE
    report = streams.probe_productivity(spec, args.count, args.fuel)
    for line in streams.render_probe_report(report):
        print(line)
    return EXIT_OK if report.all_produced else EXIT_FUEL


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracstream",
        description="Fractran runs, the prime stream, Turing machine "
        "compilation and stream spec translation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="trace a program from a start value")
    p.add_argument("program", help="program file or inline fraction list")
    p.add_argument("n0", type=int, help="start value")
    p.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL)
    p.add_argument(
        "--factored", action="store_true", help="append prime factorizations"
    )
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("primes", help="prime exponents from the prime game")
    p.add_argument("--count", type=_nonnegative, default=5)
    p.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("compile-tm", help="compile a Turing machine")
    p.add_argument("machine", help="machine file or inline text")
    p.add_argument(
        "--normalize",
        action="store_true",
        help="split self transitions through shadow states first",
    )
    p.set_defaults(func=cmd_compile_tm)

    p = sub.add_parser("translate", help="print a program's stream spec rules")
    p.add_argument("source", help="program file, inline text, or collatz")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("probe", help="bounded productivity probe")
    p.add_argument("source", help="program file, inline text, or collatz")
    p.add_argument("--count", type=_nonnegative, default=10)
    p.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL)
    p.set_defaults(func=cmd_probe)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
