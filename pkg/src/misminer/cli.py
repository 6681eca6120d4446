"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 input error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import nullcontext
from fractions import Fraction
from typing import Optional, Sequence

from . import bench
from .dataset import (
    ROUNDINGS,
    DatasetError,
    assign_mis,
    format_mis,
    read_fimi,
    read_mis,
    stats,
)
from .engine import SearchStats, search
from .oracle import DEFAULT_LIMIT
from .queries import MODES, QuerySpec, build_model
from .verify import check_instance, random_trials

EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _load_dataset(path: str):
    try:
        return read_fimi(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except DatasetError as exc:
        raise InputError(f"{path}: {exc}") from None


def _generated_profile(ds, args):
    try:
        return assign_mis(
            ds, args.beta, args.mis_min, relative=args.relative, rounding=args.rounding
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _add_mis_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--beta", type=_fraction, required=required, help="in [0, 1]")
    p.add_argument("--mis-min", type=_fraction, required=required,
                   help="lowest support, absolute unless --relative")
    p.add_argument("--relative", action="store_true", help="--mis-min is a fraction of |D|")
    p.add_argument("--rounding", choices=ROUNDINGS, default="ceil")


def _add_query_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--query", choices=("q0", "q1", "q2", "q3"), default="q0")
    p.add_argument("--ub", type=int, help="bound on pairwise MIS distance (q1-q3)")
    p.add_argument("--card", type=int, help="minimum itemset size (q2, q3)")
    p.add_argument("-k", type=int, help="number of itemsets (q3)")
    p.add_argument("--mode", choices=MODES, default="disjoint", help="q3 pairwise relation")
    p.add_argument("--order", choices=("minmis", "lex"), default="minmis")
    p.add_argument("--no-symbreak", action="store_true",
                   help="q3 disjoint: emit every ordering of each k-set")


def _query_spec(args) -> QuerySpec:
    try:
        return QuerySpec(
            args.query, ub=args.ub, c=args.card, k=args.k, mode=args.mode,
            symmetry_breaking=not args.no_symbreak,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_stats(args) -> int:
    print(stats(_load_dataset(args.dataset)))
    return 0


def cmd_gen_mis(args) -> int:
    ds = _load_dataset(args.dataset)
    sys.stdout.write(format_mis(_generated_profile(ds, args), ds))
    return 0


def format_solution(sol) -> str:
    return " | ".join(" ".join(map(str, itemset)) for itemset in sol.itemsets)


def cmd_mine(args) -> int:
    spec = _query_spec(args)
    if args.mis is not None and (args.beta is not None or args.mis_min is not None):
        raise UsageError("give either --mis or --beta/--mis-min, not both")
    if args.mis is None and (args.beta is None or args.mis_min is None):
        raise UsageError("need --mis FILE or both --beta and --mis-min")
    ds = _load_dataset(args.dataset)
    if args.mis is not None:
        try:
            profile = read_mis(args.mis, ds)
        except OSError as exc:
            raise InputError(f"cannot read {args.mis}: {exc.strerror or exc}") from None
        except DatasetError as exc:
            raise InputError(f"{args.mis}: {exc}") from None
    else:
        profile = _generated_profile(ds, args)

    model = build_model(ds, profile, spec, heuristic=args.order)
    run = SearchStats()
    try:
        sink = open(args.out, "w", encoding="utf-8") if args.out else nullcontext(sys.stdout)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    with sink as out:
        for sol in search(model, run):
            if not args.count_only:
                out.write(format_solution(sol) + "\n")
    print(
        f"sol={run.solutions} nodes={run.nodes} fails={run.fails} ms={round(run.elapsed * 1000)}",
        file=sys.stderr,
    )
    return 0


def cmd_verify(args) -> int:
    spec = _query_spec(args)
    limit = DEFAULT_LIMIT
    if args.items < 1 or args.items > limit.max_items:
        raise UsageError(f"--items must be in [1, {limit.max_items}]")
    if spec.kind == "q3" and (args.items > limit.q3_max_items or spec.k > limit.q3_max_k):
        raise UsageError(
            f"q3 verification needs --items <= {limit.q3_max_items} and -k <= {limit.q3_max_k}"
        )
    if args.transactions < 1 or not 0 <= args.density <= 1 or args.trials < 0:
        raise UsageError("need --transactions >= 1, --density in [0, 1], --trials >= 0")
    instances = random_trials(args.seed, args.trials, args.items, args.transactions, args.density)
    for trial, (ds, profile) in enumerate(instances):
        mismatch, _ = check_instance(ds, profile, spec, args.order)
        if mismatch is not None:
            print(f"trial {trial}: MISMATCH", file=sys.stderr)
            print(mismatch.describe(), file=sys.stderr)
            return EXIT_MISMATCH
    print(f"{args.trials}/{args.trials} trials match the oracle ({spec.kind})")
    return 0


def cmd_bench(args) -> int:
    factors = [float(f) for f in args.factors.split(",")] if args.scale_sweep else [1.0]
    points = bench.scale_sweep(args.n0, args.m0, factors, max_nodes=args.max_nodes)
    print(bench.render(points))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="misminer",
                     description="Itemset mining under multiple minimum item supports.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", help="dataset characteristics")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen-mis", help="write supports s_i = max(beta*freq(i), mis_min)")
    p.add_argument("dataset")
    _add_mis_flags(p, required=True)
    p.set_defaults(func=cmd_gen_mis)

    p = sub.add_parser("mine", help="run a query and print its solutions")
    p.add_argument("dataset")
    p.add_argument("--mis", help="MIS file ('<item> <support>' per line)")
    _add_mis_flags(p, required=False)
    _add_query_flags(p)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--out", help="write solutions here instead of stdout")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("verify", help="compare engine and brute force on random instances")
    p.add_argument("--items", type=int, default=8)
    p.add_argument("--transactions", type=int, default=30)
    p.add_argument("--density", type=float, default=0.4)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_query_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="per-node propagation cost over a size sweep")
    p.add_argument("--scale-sweep", action="store_true",
                   help="measure every factor in --factors instead of (n0, m0) alone")
    p.add_argument("--n0", type=int, default=20)
    p.add_argument("--m0", type=int, default=40000)
    p.add_argument("--factors", default="1,2,4", help="comma-separated, applied to both n and m")
    p.add_argument("--max-nodes", type=int, default=2000)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"misminer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"misminer: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
