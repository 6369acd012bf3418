"""``plval`` command-line interface.

Exit codes: 0 success, 1 malformed input, 2 precondition violation,
3 suite failure or evaluator disagreement.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .exact import AffineFunctional, GeometryError, format_rational, parse_point
from .generate import PRESETS, InstanceSpec, generate_instance
from .hats import HatReductionError, decompose, dump_json
from .io import (
    MalformedInput,
    dumps_complex,
    dumps_function,
    dumps_json,
    function_to_dict,
    load_complex,
    load_function,
    save_complex,
)
from .pl import NegativeFunction, join, linear_combination, meet, signed_parts, zero_set_subcomplex
from .refinement import split_by_hyperplane
from .simplicial import euler_characteristic, supplement
from .suites import SUITES, run_suite
from .valuation import alpha, alpha_plus, alpha_plus_recursive

EXIT_OK, EXIT_MALFORMED, EXIT_PRECONDITION, EXIT_FAILURE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _use_color() -> bool:
    flag = os.environ.get("PLVAL_COLOR")
    if flag is not None:
        return flag == "1"
    return sys.stdout.isatty()


def _status(ok: bool, text: str) -> str:
    if not _use_color():
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
        print(out)


def _report_line(report) -> str:
    return json.dumps(report.as_dict(), sort_keys=True)


def cmd_chi(args) -> int:
    print(euler_characteristic(load_complex(args.complex)))
    return EXIT_OK


def cmd_valuation(args) -> int:
    f = load_function(args.function)
    if args.plus:
        evaluators = {"topological": alpha_plus, "recursive": alpha_plus_recursive}
    else:
        evaluators = {
            "topological": lambda g: alpha(g, "topological"),
            "recursive": lambda g: alpha(g, "recursive"),
        }
    names = ["topological", "recursive"] if args.evaluator == "both" else [args.evaluator]
    reports = [evaluators[n](f) for n in names]
    for r in reports:
        print(_report_line(r))
    if len({r.value for r in reports}) > 1:
        print(_status(False, "FAIL evaluators disagree"), file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def cmd_eval(args) -> int:
    f = load_function(args.function)
    try:
        x = parse_point(args.point)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    if len(x) != f.triangulation.ambient_dim:
        raise MalformedInput("point dimension does not match the complex")
    print(format_rational(f(x)))
    return EXIT_OK


def cmd_combine(args) -> int:
    f, g = load_function(args.f), load_function(args.g)
    if args.op == "meet":
        h = meet(f, g)
    elif args.op == "join":
        h = join(f, g)
    else:
        h = linear_combination([(1, f), (1 if args.op == "add" else -1, g)])
    _write(dumps_function(h), args.output)
    return EXIT_OK


def cmd_parts(args) -> int:
    pos, neg = signed_parts(load_function(args.function))
    for suffix, part in (("plus", pos), ("minus", neg)):
        path = f"{args.output}.{suffix}.json"
        Path(path).write_text(dumps_function(part), encoding="utf-8")
        print(path)
    return EXIT_OK


def cmd_decompose(args) -> int:
    sys.stdout.write(dumps_json(decompose(load_function(args.function))))
    return EXIT_OK


def cmd_supplement(args) -> int:
    f = load_function(args.function)
    S = supplement(f.triangulation, zero_set_subcomplex(f))
    _write(dumps_complex(S), args.output)
    return EXIT_OK


def cmd_refine(args) -> int:
    K = load_complex(args.complex)
    try:
        ell = AffineFunctional.parse(args.hyperplane)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    _write(dumps_complex(split_by_hyperplane(K, ell)), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    rows = run_suite(args.suite, args.seed, args.cases)
    for row in rows:
        print(_status(row.passed, row.line()))
        for witness in row.failures[: args.show]:
            print("  counterexample: " + json.dumps(witness, sort_keys=True))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAILURE


def cmd_generate(args) -> int:
    spec = InstanceSpec(args.preset, args.depth, args.hats, args.seed, args.max_terms)
    K, fs = generate_instance(spec)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    save_complex(K, out / "complex.json")
    print(out / "complex.json")
    for i, f in enumerate(fs):
        path = out / f"f{i}.json"
        text = json.dumps(function_to_dict(f, "complex.json"), sort_keys=True, indent=1)
        path.write_text(text + "\n", encoding="utf-8")
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="plval", description="Exact PL functions and their Euler characteristic valuation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("chi", help="Euler characteristic of a complex")
    s.add_argument("complex")
    s.set_defaults(run=cmd_chi)

    s = sub.add_parser("valuation", help="alpha of a function")
    s.add_argument("function")
    s.add_argument("--evaluator", choices=["topological", "recursive", "both"], default="topological")
    s.add_argument("--plus", action="store_true", help="require f >= 0 and report alpha_plus")
    s.set_defaults(run=cmd_valuation)

    s = sub.add_parser("eval", help="value of a function at a point")
    s.add_argument("function")
    s.add_argument("--point", required=True, help='comma separated rationals, e.g. "1/4,1/2"')
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("combine", help="meet, join, sum or difference of two functions")
    s.add_argument("--op", choices=["meet", "join", "add", "sub"], required=True)
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_combine)

    s = sub.add_parser("parts", help="write BASE.plus.json and BASE.minus.json")
    s.add_argument("function")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(run=cmd_parts)

    s = sub.add_parser("decompose", help="hat coefficients over the function's triangulation")
    s.add_argument("function")
    s.set_defaults(run=cmd_decompose)

    s = sub.add_parser("supplement", help="supplement complex of the zero set")
    s.add_argument("function")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_supplement)

    s = sub.add_parser("refine", help="split a complex by a hyperplane")
    s.add_argument("complex")
    s.add_argument("--hyperplane", required=True, help='"g1,..,gn;c" for g.x + c')
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_refine)

    s = sub.add_parser("check", help="run a property suite")
    s.add_argument("--suite", choices=SUITES, required=True)
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--cases", type=int, default=20)
    s.add_argument("--show", type=int, default=3, help="counterexamples printed per property")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("generate", help="write a seeded random instance")
    s.add_argument("--preset", default="interval", help=f"one of {', '.join(PRESETS)} or a complex file")
    s.add_argument("--depth", type=int, default=0)
    s.add_argument("--hats", type=int, default=1, help="number of functions to emit")
    s.add_argument("--max-terms", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(run=cmd_generate)
    return p


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_MALFORMED
    try:
        return args.run(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except HatReductionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(dump_json(exc), file=sys.stderr)
        return EXIT_FAILURE
    except (NegativeFunction, GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def main() -> None:
    sys.exit(run_command())
