"""Command-line interface: ``choreswap {solve,verify,gen}``.

Exit codes: 0 success / PASS, 1 verification FAIL, 2 input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import io
from .core import utility_vector
from .errors import BudgetExceeded, ChoreswapError, ConfigurationError, DomainError, InvariantError
from .verify import EnumerationBudget, brute_force_optimal
from .yankee import Criterion, WeightedPMalfare, make_criterion, run_general_yankee_swap

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_p(text: str):
    """Keep integral exponents exact; anything else becomes a float."""
    try:
        value = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value.denominator == 1:
        return int(value)
    return float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="choreswap", description="Fair allocation of chores with binary supermodular costs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def criterion_flags(p):
        p.add_argument("--instance", required=True, help="instance JSON document")
        p.add_argument("--criterion", choices=("leximin", "malfare", "usw"), default="leximin")
        p.add_argument("--p", type=_parse_p, help="malfare exponent (>= 1), required for malfare")

    solve = sub.add_parser("solve", help="run the solver and write a result document")
    criterion_flags(solve)
    solve.add_argument("--output", help="result path (default: stdout)")
    solve.add_argument("--trace", action="store_true", help="include the per-iteration trace")

    verify = sub.add_parser("verify", help="compare the solver against brute force")
    criterion_flags(verify)
    verify.add_argument("--budget", type=int, default=EnumerationBudget().max_allocations)

    gen = sub.add_parser("gen", help="generate a random instance document")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--families", default="approval_cap,partition_cap",
                     help=f"comma-separated subset of {','.join(io.FAMILIES)}")
    gen.add_argument("--weight-skew", type=int, default=0,
                     help="0: unit weights; k: weights from {1, 2..k+1, 1/2..1/(k+1)}")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--output", help="instance path (default: stdout)")
    return parser


def _criterion(args) -> Criterion:
    if args.criterion == "malfare" and args.p is None:
        raise ConfigurationError("p required for --criterion malfare")
    return make_criterion(args.criterion, args.p)


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return io.parse_instance(fh.read())


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _show(value) -> str:
    if isinstance(value, tuple):
        return "(" + ", ".join(str(v) for v in value) + ")"
    return str(value)


def solve_command(args) -> int:
    criterion = _criterion(args)
    instance = _load(args.instance)
    result = run_general_yankee_swap(instance, criterion.gain())
    _emit(io.dumps(io.result_to_dict(instance, criterion, result, trace=args.trace)), args.output)
    return EXIT_OK


def verify_command(args, solver=run_general_yankee_swap) -> int:
    criterion = _criterion(args)
    instance = _load(args.instance)
    best = brute_force_optimal(instance, criterion, EnumerationBudget(max_allocations=args.budget))
    result = solver(instance, criterion.gain())
    ours = criterion.value(utility_vector(instance, result.allocation), instance.weights)
    if isinstance(criterion, WeightedPMalfare) and (isinstance(ours, float) or isinstance(best.value, float)):
        ok = abs(ours - best.value) <= 1e-9
    else:
        ok = ours == best.value
    print(f"criterion:   {criterion.name}")
    print(f"solver:      {_show(ours)}")
    print(f"brute force: {_show(best.value)}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def gen_command(args) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    unknown = [f for f in families if f not in io.FAMILIES]
    if unknown or not families:
        raise UsageError(f"unknown families {unknown}" if unknown else "no families given")
    if args.n < 1 or args.m < 0:
        raise UsageError(f"need --n >= 1 and --m >= 0, got n={args.n}, m={args.m}")
    if "explicit" in families and args.m > io.MAX_EXPLICIT_CHORES:
        raise UsageError(f"explicit tables support at most {io.MAX_EXPLICIT_CHORES} chores")
    if args.weight_skew < 0:
        raise UsageError("--weight-skew must be nonnegative")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    rng = random.Random(args.seed)
    instance = io.random_instance(rng, args.n, args.m, families, io.skew_weights(args.weight_skew))
    _emit(io.serialize_instance(instance), args.output)
    return EXIT_OK


COMMANDS = {"solve": solve_command, "verify": verify_command, "gen": gen_command}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except BudgetExceeded as e:
        print(f"error: {e}; rerun with --budget {e.required}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, ConfigurationError, DomainError, io.DocumentError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ChoreswapError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
