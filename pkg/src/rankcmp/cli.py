"""Command line interface.

Usage::

    rankcmp compare "a > (b, c) > d" "a > b > c > d" --measure precision \\
        --homogenize --partial-policy max_similarity
    rankcmp series @system.txt @reference.txt --measure ndcg --variant shifted
    rankcmp batch queries.tsv --measure avep

A ranking argument starting with ``@`` is read from that UTF-8 file.  Records
go to stdout as JSON lines, diagnostics to stderr.  Exit status is 0 when a
defined value was produced; see :mod:`rankcmp.errors` for the other codes.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from .errors import IO_EXIT_CODE, RankingError
from .measures import VARIANTS, TernaryWeights
from .pipeline import (
    DEFAULT_EXTENSION_LIMIT,
    MEASURES,
    POLICIES,
    ComparisonOptions,
    batch_command,
    compare_command,
    series_command,
)


def _ternary(text: str) -> TernaryWeights:
    try:
        correct, absent, reverse = (float(part) for part in text.split(","))
        return TernaryWeights(correct, absent, reverse)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'correct,absent,reversed' weights: {exc}") from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--measure", required=True, choices=MEASURES)
    common.add_argument("--representation", choices=("items", "pairs"),
                        help="default: pairs where supported, else items")
    common.add_argument("--homogenize", action="store_true",
                        help="restrict both rankings to their shared items first")
    common.add_argument("--partial-policy", choices=POLICIES, default="strict",
                        help="how to handle tied items (default: strict)")
    common.add_argument("--symmetrize", action="store_true",
                        help="average the measure over both argument orders")
    common.add_argument("--k", type=_positive_int)
    common.add_argument("--beta", type=float)
    common.add_argument("--variant", choices=VARIANTS)
    common.add_argument("--ternary-weights", type=_ternary, metavar="C,A,R")
    common.add_argument("--extension-limit", type=_positive_int, default=DEFAULT_EXTENSION_LIMIT)

    parser = argparse.ArgumentParser(
        prog="rankcmp",
        description="Compare incomplete, partially ordered rankings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("compare", "score one system ranking against one reference ranking"),
        ("series", "score a rank-based measure at every cutoff k"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("system", help="ranking text, or @file")
        p.add_argument("reference", help="ranking text, or @file")
    p = sub.add_parser("batch", parents=[common], help="score a TSV file of queries and average")
    p.add_argument("batch_file")
    return parser


def _ranking_text(arg: str) -> str:
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as handle:
            return handle.read().strip()
    return arg


def _options(args: argparse.Namespace) -> ComparisonOptions:
    return ComparisonOptions(
        measure=args.measure,
        representation=args.representation,
        homogenize=args.homogenize,
        partial_policy=args.partial_policy,
        symmetrize=args.symmetrize,
        k=args.k,
        beta=args.beta,
        variant=args.variant,
        ternary_weights=args.ternary_weights,
        extension_limit=args.extension_limit,
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        options = _options(args)
        if args.command == "batch":
            report = batch_command(options, args.batch_file)
            for line in report.lines():
                print(line)
            for error in report.aggregate.extra["errors"]:
                print(f"rankcmp: line {error['line']}: {error['reason']}", file=sys.stderr)
            return report.exit_code
        command = compare_command if args.command == "compare" else series_command
        record = command(options, _ranking_text(args.system), _ranking_text(args.reference))
    except RankingError as exc:
        print(f"rankcmp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"rankcmp: I/O error: {exc}", file=sys.stderr)
        return IO_EXIT_CODE
    print(record.to_json())
    if record.reason:
        print(f"rankcmp: undefined: {record.reason}", file=sys.stderr)
    return record.exit_code


if __name__ == "__main__":
    sys.exit(main())
