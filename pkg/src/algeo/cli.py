"""Command line entry point: ``algeo verify|functions|coherence|forms|report ALGEBRA``.

ALGEBRA is a builtin name (``m2q``, ``qz3``, ``sl2``, ``sl2half``,
``octonions``, ``zero3``, ``poisson_sl2``, ``random:P:N:SEED``) or a path to a
JSON algebra file.  ``functions`` also accepts ``gerstenhaber:V:K`` for the
truncated cochain carrier of a V-dimensional space.

Exit status: 0 when every check passes, 1 when some check fails, 2 on
usage or input errors.
"""
from __future__ import annotations

import argparse
import re
import sys

from ._version import __version__
from .algebra_file import load_algebra
from .cochain import set_budget
from .errors import AlgeoError
from .suites import (coherence_suite, forms_suite, full_report, functions_suite, gerstenhaber_suite,
                     verify_suite)

COMMANDS = ("verify", "functions", "coherence", "forms", "report")
_GERSTENHABER = re.compile(r"gerstenhaber:(\d+):(\d+)")


def build_parser():
    parser = argparse.ArgumentParser(prog="algeo", description="Exact checks for Hochschild quasi-complexes "
                                     "and torsion algebras.")
    parser.add_argument("--version", action="version", version=f"algeo {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("algebra", help="builtin name or path to a JSON algebra file")
    parser.add_argument("--max-arity", type=int, default=4, help="largest cochain arity in random trials")
    parser.add_argument("--trials", type=int, default=64)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-order", type=int, default=4, help="largest N tried for d^N = 0")
    parser.add_argument("--max-degree", type=int, default=1, help="largest cochain degree in the coherence search")
    parser.add_argument("--max-form-degree", type=int, default=2)
    parser.add_argument("--carrier", choices=("A", "C"), default="C",
                        help="forms with values in functions (A) or vector fields (C)")
    parser.add_argument("--format", choices=("md", "json"), default="md")
    parser.add_argument("--budget", type=int, default=None, metavar="SCALARS",
                        help="largest coefficient count an operation may create")
    parser.add_argument("--timing", action="store_true", help="include per-check timings in json output")
    return parser


def _validate(parser, args):
    if args.max_arity < 1:
        parser.error("--max-arity must be at least 1")
    if args.trials < 0:
        parser.error("--trials must be non-negative")
    if args.max_order < 1:
        parser.error("--max-order must be at least 1")
    if args.max_degree < 0:
        parser.error("--max-degree must be non-negative")
    if args.max_form_degree < 0:
        parser.error("--max-form-degree must be non-negative")
    if args.budget is not None and args.budget < 1:
        parser.error("--budget must be positive")


def run(args):
    m = _GERSTENHABER.fullmatch(args.algebra)
    if m:
        if args.command != "functions":
            raise AlgeoError("gerstenhaber:V:K is only available to the functions command")
        return gerstenhaber_suite(int(m.group(1)), int(m.group(2)))
    A = load_algebra(args.algebra)
    if args.command == "verify":
        return verify_suite(A, args.max_arity, args.trials, args.seed)
    if args.command == "functions":
        return functions_suite(A)
    if args.command == "coherence":
        return coherence_suite(A, args.max_order, args.max_degree)
    if args.command == "forms":
        return forms_suite(A, args.carrier, args.max_form_degree, args.seed)
    return full_report(A, args.max_arity, args.trials, args.seed, args.max_order, args.max_degree,
                       args.max_form_degree)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    set_budget(args.budget)
    try:
        report = run(args)
        report.options.setdefault("seed", args.seed)
    except (AlgeoError, OSError) as exc:
        print(f"algeo: error: {exc}", file=sys.stderr)
        return 2
    finally:
        set_budget(None)
    out = report.to_json(args.timing) if args.format == "json" else report.to_markdown()
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
