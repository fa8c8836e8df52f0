"""Command line front end.

Reports are ``KEY: value`` lines. Exit status 0 means success, 1 means a
failed check (the report carries the witness), 2 means a usage, parse or
precondition error.
"""

import argparse
import sys
from fractions import Fraction

from .constructions import (annihilation_build, coeff_build, curr_build, curr_extend,
                            plus_minus, w_build)
from .errors import (ArityMismatch, CutoffExceeded, NotASubalgebra, ParseError, PseudoalgError,
                     RankMismatch, WrongHopfAlgebra)
from .fileformat import DEFAULT_CUTOFF, emit_file, read_file, to_ordinary
from .hopf import HopfAlgebra, LieData, hopf_axiom_suite
from .iso import current_iso_check
from .pseudo import format_module
from .tkk import tkk_build
from .varieties import VARIETIES, ann_l, check_variety

USAGE_ERRORS = (ParseError, CutoffExceeded, WrongHopfAlgebra, RankMismatch, ArityMismatch,
                NotASubalgebra)


class UsageError(Exception):
    pass


def _load(path, args):
    return read_file(path, args.degree_cutoff)


def _algebra(path, args):
    d = _load(path, args)
    if d.algebra is None:
        raise UsageError(f"{path} has no [module] section")
    return d


def _out(lines):
    for line in lines:
        print(line)


def cmd_check(args):
    d = _algebra(args.file, args)
    report = check_variety(d.algebra, args.variety)
    lines = [f"VARIETY: {args.variety}"] + report.lines(d.algebra.names)
    lines.append(f"RESULT: {'PASS' if report.passed else 'FAIL'}")
    _out(lines)
    return 0 if report.passed else 1


def cmd_axioms(args):
    d = _load(args.file, args)
    alg = d.smash if d.smash is not None else d.hopf
    results = hopf_axiom_suite(alg, args.degree)
    ok = all(r.passed for r in results)
    _out([f"DEGREE: {args.degree}"] + [r.line() for r in results]
         + [f"RESULT: {'PASS' if ok else 'FAIL'}"])
    return 0 if ok else 1


def _parse_matrix(text):
    try:
        return [[Fraction(x) for x in row.split()] for row in text.split(";")]
    except ValueError:
        raise UsageError(f"bad matrix {text!r}") from None


def cmd_build(args):
    kind = args.kind
    if kind == "walg":
        d = _load(args.file, args)
        H, P = d.hopf, w_build(d.hopf)
    elif kind == "curr":
        A = to_ordinary(_algebra(args.file, args).algebra)
        if args.hopf:
            H = _load(args.hopf, args).hopf
        else:
            H = HopfAlgebra(LieData(1, {}), args.degree_cutoff or DEFAULT_CUTOFF)
        P = curr_build(H, A)
    elif kind == "extend":
        if not args.hopf or not args.matrix:
            raise UsageError("build extend needs --hopf and --matrix")
        d = _algebra(args.file, args)
        H = _load(args.hopf, args).hopf
        P = curr_extend(H, d.hopf, _parse_matrix(args.matrix), d.algebra)
    else:
        d = _algebra(args.file, args)
        H = d.hopf
        if kind in ("plus", "minus"):
            P = plus_minus(d.algebra, kind)
        else:
            P = tkk_build(d.algebra, args.s0_degree).algebra
    text = emit_file(H, P)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _out([f"BUILD: {kind}", f"RANK: {P.rank}", f"OUTPUT: {args.output}"])
    else:
        sys.stdout.write(text)
    return 0


def _window_report(W, head):
    lines = list(head)
    lines.append(f"GENERATORS: {len(W.generators)}")
    lines.append(f"OVERFLOW: {len(W.overflow)}")
    lines.extend(f"PRODUCT: {line}" for line in W.lines())
    return lines


def cmd_coeff(args):
    d = _algebra(args.file, args)
    W = coeff_build(d.algebra, args.window)
    _out(_window_report(W, [f"WINDOW: {args.window}"]))
    return 0


def cmd_ann(args):
    d = _algebra(args.file, args)
    W = annihilation_build(d.algebra, args.probe)
    _out(_window_report(W, [f"PROBE: {args.probe}"]))
    return 0


def cmd_annihilator(args):
    d = _algebra(args.file, args)
    basis = ann_l(d.algebra, args.probe)
    lines = [f"PROBE: {args.probe}", f"DIMENSION: {len(basis)}"]
    lines.extend(f"ELEMENT: {format_module(m, d.algebra.names)}" for m in basis)
    _out(lines)
    return 0


def cmd_iso(args):
    d = _algebra(args.file, args)
    g = to_ordinary(_algebra(args.ordinary, args).algebra)
    result = current_iso_check(d.algebra, g, seed=args.seed)
    _out(result.lines())
    return 0 if result.found else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree-cutoff", type=int, default=argparse.SUPPRESS,
                        help="override the degree_cutoff of the input files")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized searches (default 0)")

    parser = argparse.ArgumentParser(prog="pseudoalg", parents=[common],
                                     description="Exact computations with finite pseudoalgebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="verify a variety's identities")
    p.add_argument("file")
    p.add_argument("--variety", required=True, choices=sorted(VARIETIES))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", parents=[common], help="emit a constructed algebra")
    p.add_argument("kind", choices=["curr", "walg", "plus", "minus", "tkk", "extend"])
    p.add_argument("file", help="input algebra (the Hopf data file for walg)")
    p.add_argument("--hopf", help="Hopf data file for curr (default: one-dimensional h) and extend")
    p.add_argument("--matrix", help="inclusion matrix for extend, rows separated by ';'")
    p.add_argument("--s0-degree", type=int, default=2, help="degree bound for S0 in tkk")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("coeff", parents=[common], help="window of the coefficient algebra")
    p.add_argument("file")
    p.add_argument("--window", type=int, required=True)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("ann", parents=[common], help="window of the annihilation algebra")
    p.add_argument("file")
    p.add_argument("--probe", type=int, required=True)
    p.set_defaults(func=cmd_ann)

    p = sub.add_parser("annihilator", parents=[common], help="left annihilator up to a degree")
    p.add_argument("file")
    p.add_argument("--probe", type=int, required=True)
    p.set_defaults(func=cmd_annihilator)

    p = sub.add_parser("axioms", parents=[common], help="Hopf axiom suite")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("iso", parents=[common], help="search for P ~ Curr g")
    p.add_argument("file")
    p.add_argument("ordinary")
    p.set_defaults(func=cmd_iso)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.degree_cutoff = getattr(args, "degree_cutoff", None)
    args.seed = getattr(args, "seed", 0)
    try:
        return args.func(args)
    except (UsageError, OSError, *USAGE_ERRORS) as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return 2
    except PseudoalgError as exc:
        print(f"ERROR: {type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
