"""Command line front end.

Exit codes: 0 success, 1 verification mismatch, 2 validation error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .closure import ClosureSpec, closure
from .counting import (
    BRUTE_CAP_BITS,
    count_brute,
    count_next_closure,
    iter_closed_sets,
    lattice,
    reference_sequence,
    sequence,
    shard_count,
)
from .errors import CapExceeded
from .intervals import IntervalSet, universe_size
from .posets import (
    chain_equivalence_check,
    coherent_check,
    compact_meet_check,
    ideals,
    incidence_algebra,
    is_distributive,
    load_poset,
    subfunctor_count,
)

_POSET_CHECKS = ("ideals", "distributive", "subfunctors", "coherent", "compact-meet", "incidence")


def _parse_ops(text: str) -> ClosureSpec:
    return ClosureSpec.parse(text)


def _positive(name: str, value: int) -> int:
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return value


def cmd_count(args: argparse.Namespace) -> int:
    spec = _parse_ops(args.ops)
    n = _positive("--n", args.n)
    _positive("--shards", args.shards)
    if args.algorithm == "brute":
        if args.shards != 1:
            raise ValueError("--shards applies only to the next-closure algorithm")
        count = count_brute(n, spec)
    elif args.shards != 1:
        count = shard_count(n, spec, args.shards)
    else:
        count = count_next_closure(n, spec)
    if args.verify and universe_size(n) <= BRUTE_CAP_BITS:
        reference = count_brute(n, spec)
        if reference != count:
            print(
                f"verification failed: {count} from {args.algorithm}, {reference} from the subset sweep",
                file=sys.stderr,
            )
            return 1
    print(count)
    return 0


def cmd_sequence(args: argparse.Namespace) -> int:
    spec = _parse_ops(args.ops)
    n_max = _positive("--n-max", args.n_max)
    algorithm = "brute" if args.algorithm == "brute" else "next_closure"
    report = sequence(spec, n_max, algorithm)
    if args.verify:
        for n, count in report.terms:
            if universe_size(n) > BRUTE_CAP_BITS:
                continue
            reference = count_brute(n, spec)
            if reference != count:
                print(f"verification failed at n={n}: {count} vs {reference}", file=sys.stderr)
                return 1
    if args.format == "csv":
        sys.stdout.write(report.to_csv(reference=args.compare))
    elif args.format == "json":
        print(json.dumps(report.to_json_dict(), sort_keys=True))
    elif args.format == "oeis":
        sys.stdout.write(report.to_bfile())
    else:
        for n, count in report.terms:
            line = f"{n:>3} {count}"
            if args.compare:
                ref = reference_sequence(spec, n)
                if ref is not None:
                    line += f"  ref={ref} {'ok' if ref == count else 'MISMATCH'}"
            print(line)
    return 0


def cmd_list(args: argparse.Namespace) -> int:
    spec = _parse_ops(args.ops)
    n = _positive("--n", args.n)
    if args.format == "json":
        sets = [s.indices() for s in iter_closed_sets(n, spec)]
        print(json.dumps({"n": n, "ops": str(spec), "sets": sets}, sort_keys=True))
    else:
        for s in iter_closed_sets(n, spec):
            print(s.to_literal())
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    spec = _parse_ops(args.ops)
    n = _positive("--n", args.n)
    s = IntervalSet.from_literal(n, args.set)
    closed = closure(s, spec)
    missing = closed - s
    if missing.mask == 0:
        print("closed")
    else:
        print("not closed")
        print(f"missing: {missing.to_literal()}")
    return 0


def cmd_lattice(args: argparse.Namespace) -> int:
    spec = _parse_ops(args.ops)
    n = _positive("--n", args.n)
    fam = lattice(n, spec, max_members=args.max_members)
    if args.format == "json":
        print(json.dumps(fam.to_json_dict(), sort_keys=True))
    else:
        sys.stdout.write(fam.to_dot())
    return 0


def cmd_poset(args: argparse.Namespace) -> int:
    p = load_poset(args.file)
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    for c in checks:
        if c not in _POSET_CHECKS + ("chain",):
            raise ValueError(f"unknown check {c!r}; available: {', '.join(_POSET_CHECKS + ('chain',))}")
    print(f"elements = {len(p)}")
    lat = None
    if "ideals" in checks or "distributive" in checks:
        lat = ideals(p)
    if "ideals" in checks:
        print(f"ideals = {len(lat)}")
    if "distributive" in checks:
        print(f"distributive = {str(is_distributive(lat)).lower()}")
    if "subfunctors" in checks:
        all_match = True
        for x in p.elements:
            count = subfunctor_count(p, x)
            down_ideals = len(ideals(p.restrict(p.down[p.index(x)])))
            match = count == down_ideals
            all_match &= match
            print(f"subfunctors[{x}] = {count} (ideals_below = {down_ideals}, match = {str(match).lower()})")
        print(f"subfunctors_match = {str(all_match).lower()}")
    if "coherent" in checks:
        print(f"coherent = {str(coherent_check(p)).lower()}")
    if "compact-meet" in checks:
        print(f"compact_meet = {str(compact_meet_check(p)).lower()}")
    if "incidence" in checks:
        alg = incidence_algebra(p)
        print(f"incidence_dimension = {alg.dimension}")
        print(f"incidence_associative = {str(alg.is_associative()).lower()}")
    if "chain" in checks:
        if not p.is_chain():
            raise ValueError("the chain check needs a totally ordered input poset")
        print(f"chain_equivalence = {str(chain_equivalence_check(len(p))).lower()}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intervalcat",
        description=(
            "Count and enumerate families of intervals closed under chosen operations: "
            "Q quotients, S subobjects, C cokernels, K kernels, E extensions."
        ),
        epilog=(
            "Named families: QSE Serre subcategories (powers of two), CKE thick "
            "subcategories and QE torsion classes and QS (all Catalan), Q pretorsion "
            "classes ((n+1)!), '' plain additive (2^(n(n+1)/2))."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_ops(p: argparse.ArgumentParser) -> None:
        p.add_argument("--ops", default="", help="operation flags over QSCKE ('' or 'none' for plain additive)")

    c = sub.add_parser("count", help="count the closed sets for one ambient size")
    c.add_argument("--n", type=int, required=True, help="ambient size")
    add_ops(c)
    c.add_argument("--algorithm", choices=("next-closure", "brute"), default="next-closure")
    c.add_argument("--shards", type=int, default=1, help="split the enumeration into prefix blocks")
    c.add_argument("--verify", action="store_true", help="cross-run the subset sweep when under the bit cap")
    c.set_defaults(func=cmd_count)

    s = sub.add_parser("sequence", help="counts for n = 1..n_max")
    add_ops(s)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--format", choices=("table", "csv", "json", "oeis"), default="table")
    s.add_argument("--algorithm", choices=("next-closure", "brute"), default="next-closure")
    s.add_argument("--compare", action="store_true", help="append closed-form reference values where known")
    s.add_argument("--verify", action="store_true", help="cross-run the subset sweep when under the bit cap")
    s.set_defaults(func=cmd_sequence)

    l = sub.add_parser("list", help="print every closed set in lectic order")
    l.add_argument("--n", type=int, required=True)
    add_ops(l)
    l.add_argument("--format", choices=("text", "json"), default="text")
    l.set_defaults(func=cmd_list)

    k = sub.add_parser("check", help="test a set for closedness, reporting what is missing")
    k.add_argument("--n", type=int, required=True)
    add_ops(k)
    k.add_argument("--set", required=True, help="semicolon-separated intervals, e.g. '1,1;2,2'")
    k.set_defaults(func=cmd_check)

    h = sub.add_parser("lattice", help="export the lattice of closed sets")
    h.add_argument("--n", type=int, required=True)
    add_ops(h)
    h.add_argument("--format", choices=("dot", "json"), default="dot")
    h.add_argument("--max-members", type=int, default=4096)
    h.set_defaults(func=cmd_lattice)

    q = sub.add_parser("poset", help="run ideal-lattice and coherence reports on a poset file")
    q.add_argument("--file", required=True)
    q.add_argument(
        "--checks",
        default=",".join(_POSET_CHECKS),
        help=f"comma-separated subset of: {', '.join(_POSET_CHECKS + ('chain',))}",
    )
    q.set_defaults(func=cmd_poset)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
