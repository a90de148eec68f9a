"""Command-line entry point and line-oriented REPL."""

from __future__ import annotations

import argparse
import sys
from typing import Dict, List, Optional, TextIO

from . import category, hierarchy, modelcheck, translate
from .errors import InvariantBreach, UserError
from .hf_kernel import funset_of
from .surface import (Value, eval_text, parse, parse_value, print_canonical,
                      evaluate)

EXIT_OK, EXIT_USER, EXIT_INTERNAL = 0, 1, 2

REPL_HELP = """\
expressions are evaluated and printed canonically
:let NAME = EXPR    bind a name
:check THEORY N     model sweep (flt, fst, lt) up to size N
:enumerate N        list the functions of stage N
:quit               leave"""


class Repl:
    def __init__(self, out: TextIO):
        self.env: Dict[str, Value] = {}
        self.out = out

    def emit(self, line: str) -> None:
        print(line, file=self.out)

    def handle(self, line: str) -> bool:
        """Process one line; returns False on ``:quit``."""
        line = line.strip()
        if not line:
            return True
        if not line.startswith(":"):
            self.emit(print_canonical(evaluate(parse(line), self.env)))
            return True
        cmd, _, rest = line[1:].partition(" ")
        rest = rest.strip()
        if cmd == "quit":
            return False
        if cmd == "help":
            self.emit(REPL_HELP)
        elif cmd == "let":
            name, eq, expr = rest.partition("=")
            name = name.strip()
            if not eq or not name.isidentifier() or not name.islower():
                raise UserError("usage: :let NAME = EXPR")
            self.env[name] = evaluate(parse(expr), self.env)
            self.emit(f"{name} = {print_canonical(self.env[name])}")
        elif cmd == "check":
            parts = rest.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise UserError("usage: :check THEORY N")
            for r in modelcheck.check_theory(parts[0], int(parts[1])):
                self.emit(_report_line(r))
        elif cmd == "enumerate":
            if not rest.isdigit():
                raise UserError("usage: :enumerate N")
            for f in hierarchy.enumerate_stage(int(rest)):
                self.emit(print_canonical(f))
        else:
            raise UserError(f"unknown command :{cmd}")
        return True

    def run(self, stream: TextIO, interactive: bool) -> int:
        status = EXIT_OK
        while True:
            if interactive:
                self.out.write("fltk> ")
                self.out.flush()
            line = stream.readline()
            if not line:
                return status
            try:
                if not self.handle(line):
                    return status
            except (UserError, ValueError) as exc:
                self.emit(f"error: {exc}")
                status = EXIT_USER


def _report_line(r: modelcheck.SweepReport) -> str:
    fails = ", ".join(f"{k}={v}" for k, v in r.per_axiom_failures.items())
    return (f"{r.theory} size={r.size} candidates={r.candidates} "
            f"models={len(r.models)} iso_classes={r.iso_classes} "
            f"first_failures[{fails}]")


def _cmd_eval(args) -> int:
    print(print_canonical(eval_text(args.expr)))
    return EXIT_OK


def _cmd_repl(args) -> int:
    return Repl(sys.stdout).run(sys.stdin, sys.stdin.isatty())


def _cmd_enumerate(args) -> int:
    if args.count_only:
        print(hierarchy.count_p(args.stage))
        return EXIT_OK
    for f in hierarchy.enumerate_stage(args.stage):
        print(print_canonical(f))
    return EXIT_OK


def _cmd_fevels(args) -> int:
    for s in hierarchy.fevels_within(hierarchy.enumerate_stage(args.within_stage)):
        print(print_canonical(s))
    return EXIT_OK


def _cmd_count_p(args) -> int:
    print(hierarchy.count_p(args.n))
    return EXIT_OK


def _cmd_check(args) -> int:
    reports = modelcheck.check_theory(args.theory, args.max_size)
    if args.report == "json":
        print(modelcheck.reports_to_json(reports))
    else:
        for r in reports:
            print(_report_line(r))
    return EXIT_OK


def _cmd_translate(args) -> int:
    direction = translate.Direction(args.dir)
    status = EXIT_OK
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            value = parse_value(line)
            print(print_canonical(translate.translate_value(value, direction)))
        except (UserError, TypeError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = EXIT_USER
    return status


def _cmd_cat(args) -> int:
    if args.what == "laws":
        arrows = hierarchy.enumerate_stage(args.stage)
        ident = category.identity_law_failures(arrows)
        triples = list(category.composable_triples(arrows))
        assoc = category.associativity_failures(arrows)
        print(f"arrows={len(arrows)} identity_failures={len(ident)} "
              f"composable_triples={len(triples)} "
              f"associativity_failures={len(assoc)}")
        return EXIT_OK if not ident and not assoc else EXIT_INTERNAL
    if args.cardA is None or args.cardB is None:
        raise UserError("cat product needs --cardA and --cardB")
    objects = _funsets_by_size(hierarchy.enumerate_stage(2))
    for a in objects.get(args.cardA, []):
        for b in objects.get(args.cardB, []):
            found = category.find_products(a, b, max_apex=args.max_apex)
            print(f"A={print_canonical(a)} B={print_canonical(b)} "
                  f"products={len(found)}")
            if args.report:
                for d in found:
                    print(f"  P={print_canonical(d.apex)} "
                          f"p1={print_canonical(d.proj1)} "
                          f"p2={print_canonical(d.proj2)}")
    return EXIT_OK


def _funsets_by_size(universe) -> Dict[int, List]:
    from itertools import combinations
    out: Dict[int, List] = {}
    for r in range(len(universe) + 1):
        for c in combinations(universe, r):
            out.setdefault(r, []).append(funset_of(c))
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fltk",
                                description="hereditarily finite functions")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="evaluate one expression")
    s.add_argument("expr")
    s.set_defaults(fn=_cmd_eval)

    s = sub.add_parser("repl", help="interactive or batch evaluation")
    s.set_defaults(fn=_cmd_repl)

    s = sub.add_parser("enumerate", help="list the functions of a stage")
    s.add_argument("--stage", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(fn=_cmd_enumerate)

    s = sub.add_parser("fevels", help="fevels found by a stage")
    s.add_argument("--within-stage", type=int, required=True)
    s.set_defaults(fn=_cmd_fevels)

    s = sub.add_parser("count-p", help="number of functions for N fevels")
    s.add_argument("n", type=int)
    s.set_defaults(fn=_cmd_count_p)

    s = sub.add_parser("check", help="exhaustive finite model sweep")
    s.add_argument("--theory", choices=sorted(modelcheck.SWEEPS),
                   required=True)
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--report", choices=["json", "text"], default="text")
    s.set_defaults(fn=_cmd_check)

    s = sub.add_parser("translate", help="translate values read from stdin")
    s.add_argument("--dir", choices=["i", "j"], required=True)
    s.set_defaults(fn=_cmd_translate)

    s = sub.add_parser("cat", help="category checks")
    s.add_argument("what", choices=["laws", "product"])
    s.add_argument("--stage", type=int, default=3)
    s.add_argument("--cardA", type=int)
    s.add_argument("--cardB", type=int)
    s.add_argument("--max-apex", type=int, default=5)
    s.add_argument("--report", action="store_true")
    s.set_defaults(fn=_cmd_cat)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InvariantBreach as exc:
        print(f"fltk: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UserError, ValueError) as exc:
        print(f"fltk: {exc}", file=sys.stderr)
        return EXIT_USER
    except Exception as exc:  # noqa: BLE001
        print(f"fltk: internal error: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
