"""Command-line front end.

Exit status: 0 on success, 1 on input or validation errors, 2 when
``--paranoid`` catches an invariant failure during reduction.
"""

from __future__ import annotations

import argparse
import sys

from . import bench
from .checks import ModelReport, check_all, check_name_uniqueness, check_sc_structure
from .cleanup import cleanup
from .initialise import PreconditionError, check_init_preconditions, initialise
from .inverse import invert_initialisation
from .model import ScModel
from .pn_io import (ParseError, parse_petri_net, parse_statechart, serialize_petri_net,
                    serialize_statechart)
from .reduce import InvariantViolation, run_to_fixpoint


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load_net(path: str):
    try:
        return parse_petri_net(_read(path))
    except ParseError as exc:
        raise ParseError(exc.diagnostics, path) from None


def _load_sc(path: str) -> ScModel:
    try:
        return parse_statechart(_read(path))
    except ParseError as exc:
        raise ParseError(exc.diagnostics, path) from None


def _reduce_opts(args) -> dict:
    return dict(nac_optimisation=not args.no_nac_opt, order_seed=args.seed,
                paranoid=args.paranoid, check_priority=args.paranoid)


def _finish_reduce(args, stats) -> None:
    if args.trace:
        _write(args.trace, "".join(line + "\n" for line in stats.trace))


def cmd_convert(args) -> int:
    pn = _load_net(args.inp)
    sc = initialise(pn)
    stats = run_to_fixpoint(pn, sc, **_reduce_opts(args))
    report = cleanup(sc)
    for w in report.warnings:
        print(f"cleanup: {w}", file=sys.stderr)
    _finish_reduce(args, stats)
    _write(args.out, serialize_statechart(sc))
    if args.pn_out:
        _write(args.pn_out, serialize_petri_net(pn))
    return 0


def cmd_init_only(args) -> int:
    pn = _load_net(args.inp)
    _write(args.out, serialize_statechart(initialise(pn)))
    return 0


def cmd_reduce_only(args) -> int:
    pn = _load_net(args.inp)
    sc = _load_sc(args.sc)
    try:
        stats = run_to_fixpoint(pn, sc, **_reduce_opts(args))
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return 1
    _finish_reduce(args, stats)
    _write(args.out, serialize_statechart(sc))
    if args.pn_out:
        _write(args.pn_out, serialize_petri_net(pn))
    return 0


def cmd_invert(args) -> int:
    sc = _load_sc(args.inp)
    try:
        pn = invert_initialisation(sc)
    except ParseError as exc:
        raise ParseError(exc.diagnostics, args.inp) from None
    _write(args.out, serialize_petri_net(pn))
    return 0


def cmd_check(args) -> int:
    if args.inp.endswith(".sc"):
        sc = _load_sc(args.inp)
        report = check_sc_structure(sc).merge(check_name_uniqueness(None, sc))
    else:
        pn = _load_net(args.inp)
        report = ModelReport()
        report.merge(check_init_preconditions(pn, ScModel()))
        if report.passed:
            report.merge(check_all(pn, initialise(pn.copy())))
    print(report.render())
    print("all invariants passed" if report.passed else "invariant violations found")
    return 0 if report.passed else 1


def cmd_gen(args) -> int:
    pn = bench.generate_sp(bench.GenSpec(args.places, args.seed, args.pprob))
    _write(args.out, serialize_petri_net(pn))
    return 0


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"--sizes must be a comma-separated list of integers: {args.sizes}")
    if not sizes or any(s < 1 for s in sizes):
        raise UsageError("--sizes must list positive integers")
    if args.reps < 1:
        raise UsageError("--reps must be >= 1")
    rows = bench.run_bench(sizes, seed=args.seed, repetitions=args.reps,
                           parallel_probability=args.pprob)
    sys.stdout.write(bench.format_table(rows))
    if args.csv:
        bench.write_csv(rows, args.csv)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pn2sc", description="Petri net to statechart transformation")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def reduce_flags(p):
        p.add_argument("--trace", metavar="PATH", help="write one line per rewrite step")
        p.add_argument("--seed", type=int, default=None, help="shuffle match order")
        p.add_argument("--no-nac-opt", action="store_true",
                       help="evaluate rule conclusions before applying")
        p.add_argument("--paranoid", action="store_true",
                       help="re-check all invariants after every step")
        p.add_argument("--pn-out", metavar="PATH", help="also write the residual net")

    p = sub.add_parser("convert", help="full pipeline: .pn to .sc")
    p.add_argument("--in", dest="inp", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    reduce_flags(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("init-only", help="initialisation only: .pn to flat .sc")
    p.add_argument("--in", dest="inp", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    p.set_defaults(func=cmd_init_only)

    p = sub.add_parser("reduce-only", help="reduction on a .pn/.sc pair")
    p.add_argument("--in", dest="inp", required=True, metavar="PATH")
    p.add_argument("--sc", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    reduce_flags(p)
    p.set_defaults(func=cmd_reduce_only)

    p = sub.add_parser("invert", help="flat .sc back to .pn")
    p.add_argument("--in", dest="inp", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("check", help="report invariants of a .pn or .sc file")
    p.add_argument("--in", dest="inp", required=True, metavar="PATH")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate a series-parallel net")
    p.add_argument("--places", type=int, required=True)
    p.add_argument("--pprob", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="PATH")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time the phases on generated nets")
    p.add_argument("--sizes", default="200,500,1000")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pprob", type=float, default=0.3)
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(exc, file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"pn2sc: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"pn2sc: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
