"""The `pcf` command line tool.

Exit codes, uniform across subcommands:
  0  success / value defined / terms equal
  1  no value: bot, no-numeral within budget, or terms distinct
  2  type error
  3  parse error or unreadable input
  4  internal violation reported by a cross-check
"""

from __future__ import annotations

import argparse
import sys

from ..lifting import render
from ..opsem import WrongType, reduce, run_bounded
from ..scott import Interpreter, check_adequacy, check_soundness
from ..syntax import TypeMismatch, term_to_sexp, type_surface
from ..wtypes import TERM_SPEC, encode_term, w_equal
from .elaborate import elaborate
from .surface import ParseError, parse


def _load(path):
    with open(path, encoding="utf-8") as fh:
        return elaborate(parse(fh.read()))


def _report(verdict):
    if not verdict.passed:
        print(f"VIOLATION {verdict.detail}")
        return 4
    if verdict.status == "vacuous":
        print("vacuous")
    else:
        print(f"ok n={verdict.value}")
    return 0


def _dispatch(args):
    if args.cmd == "check":
        print(type_surface(_load(args.file).ty))
        return 0
    if args.cmd == "compile":
        print(term_to_sexp(_load(args.file)))
        return 0
    if args.cmd == "step":
        _, trace, exhausted = reduce(_load(args.file), args.max)
        for nxt, rule in trace:
            print(f"{rule.value} ⇝ {term_to_sexp(nxt)}")
        print("step-budget-exhausted" if exhausted else "normal-form")
        return 0
    if args.cmd == "run":
        final, _ = run_bounded(_load(args.file), args.max_steps)
        if final.numeral is None:
            print("no-numeral")
            return 1
        print(final.numeral)
        return 0
    if args.cmd == "denote":
        v = Interpreter().denote_base(_load(args.file), args.fuel)
        print(render(v))
        return 0 if v.defined else 1
    if args.cmd == "adequacy":
        return _report(check_adequacy(_load(args.file),
                                      args.fuel, args.max_steps))
    if args.cmd == "sound":
        return _report(check_soundness(_load(args.file),
                                       args.max_steps, args.fuel))
    if args.cmd == "eq":
        t1, t2 = _load(args.file), _load(args.file2)
        if t1.ty is t2.ty and w_equal(TERM_SPEC,
                                      encode_term(t1), encode_term(t2)):
            print("equal")
            return 0
        print("distinct")
        return 1
    raise AssertionError(args.cmd)


def main(argv=None):
    top = argparse.ArgumentParser(
        prog="pcf",
        description="Type, compile, reduce, and denote PCF programs.")
    sub = top.add_subparsers(dest="cmd", required=True)

    def cmd(name, help_text, two_files=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="a .pcf source file")
        if two_files:
            p.add_argument("file2", help="a second .pcf source file")
        return p

    cmd("check", "infer and print the program's type")
    cmd("compile", "print the combinatory form as an S-expression")
    p = cmd("step", "print the reduction trace, one rule per line")
    p.add_argument("--max", type=int, default=100,
                   help="step budget (default 100)")
    p = cmd("run", "reduce and print the resulting numeral")
    p.add_argument("--max-steps", type=int, default=10000,
                   help="step budget (default 10000)")
    p = cmd("denote", "print the fuel-bounded denotation (bot or eta n)")
    p.add_argument("--fuel", type=int, default=32,
                   help="fix unrolling budget (default 32)")
    for name, blurb in (("adequacy", "denotation, then cross-check the"
                                     " operational result"),
                        ("sound", "reduction trace cross-checked against"
                                  " the denotation")):
        p = cmd(name, blurb)
        p.add_argument("--fuel", type=int, default=32)
        p.add_argument("--max-steps", type=int, default=10000)
    cmd("eq", "decide equality of two compiled programs", two_files=True)

    args = top.parse_args(argv)
    try:
        return _dispatch(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except (TypeMismatch, WrongType) as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
