"""Measure pipeline behind the command line.

One comparison runs, in this fixed order::

    parse -> homogenize (optional) -> representation -> extension search
          (only when an input has ties) -> measure -> symmetrize (optional)

The first ranking is the retrieved/system side, the second the
relevant/reference side.  Results are :class:`ReportRecord` objects that
serialize to one JSON object per line with a fixed key order.
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from . import measures as m
from .core import PartialRanking, Score, homogenize, max_similarity, min_distance, to_pairs
from .errors import (
    EmptyQuerySet,
    InvalidK,
    InvalidOptions,
    RankingError,
    SeriesRequiresRanking,
    TiesNotAllowed,
    UndefinedMeasure,
)
from .evaluation import mean_over_queries
from .text import parse_ranking

DEFAULT_EXTENSION_LIMIT = 10_000

MEASURES = (
    "precision", "recall", "fallout", "fscore", "p_at_k", "r_precision",
    "avep", "cg", "dcg", "ndcg", "ncg",
)
# first entry is the default representation
REPRESENTATIONS = {
    "precision": ("pairs", "items"),
    "recall": ("pairs", "items"),
    "fscore": ("pairs", "items"),
    "fallout": ("pairs",),
    "r_precision": ("pairs",),
    "ncg": ("pairs",),
    "cg": ("items", "pairs"),
    "p_at_k": ("items",),
    "avep": ("items",),
    "dcg": ("items",),
    "ndcg": ("items",),
}
SERIES_MEASURES = ("cg", "dcg", "ndcg", "p_at_k")
POLICIES = ("strict", "max_similarity", "min_distance")


@dataclass(frozen=True)
class ComparisonOptions:
    """Everything that selects and parameterizes one comparison."""

    measure: str
    representation: str | None = None
    homogenize: bool = False
    partial_policy: str = "strict"
    symmetrize: bool = False
    k: int | None = None
    beta: float | None = None
    variant: str | None = None
    ternary_weights: m.TernaryWeights | None = None
    extension_limit: int = DEFAULT_EXTENSION_LIMIT

    def __post_init__(self) -> None:
        if self.measure not in MEASURES:
            raise InvalidOptions(f"unknown measure {self.measure!r}; choose from {', '.join(MEASURES)}")
        allowed = REPRESENTATIONS[self.measure]
        if self.representation is None:
            object.__setattr__(self, "representation", allowed[0])
        elif self.representation not in allowed:
            raise InvalidOptions(
                f"{self.measure} supports representation {' or '.join(allowed)}, "
                f"not {self.representation!r}"
            )
        if self.partial_policy not in POLICIES:
            raise InvalidOptions(f"unknown partial policy {self.partial_policy!r}")
        if self.k is not None and (not isinstance(self.k, int) or self.k < 1):
            raise InvalidOptions(f"k must be a positive integer, got {self.k!r}")
        if self.beta is not None and not (self.beta > 0 and math.isfinite(self.beta)):
            raise InvalidOptions(f"beta must be a positive finite number, got {self.beta!r}")
        if self.variant is not None and self.variant not in m.VARIANTS:
            raise InvalidOptions(f"unknown DCG variant {self.variant!r}")
        if not isinstance(self.extension_limit, int) or self.extension_limit < 1:
            raise InvalidOptions(f"extension limit must be a positive integer, got {self.extension_limit!r}")
        if self.measure == "fscore" and self.beta is None:
            raise InvalidOptions("fscore requires beta")
        if self.measure in ("dcg", "ndcg") and self.variant is None:
            raise InvalidOptions(f"{self.measure} requires a variant")

    def require_k(self) -> None:
        """k is needed for single-value p_at_k, dcg, ndcg and item-based cg."""
        needs_k = self.measure in ("p_at_k", "dcg", "ndcg") or (
            self.measure == "cg" and self.representation == "items"
        )
        if needs_k and self.k is None:
            raise InvalidOptions(f"{self.measure} requires k")

    @property
    def rank_indexed(self) -> bool:
        return self.measure in ("p_at_k", "avep", "dcg", "ndcg") or (
            self.measure == "cg" and self.representation == "items"
        )

    def echo(self) -> dict[str, Any]:
        w = self.ternary_weights
        return {
            "representation": self.representation,
            "homogenize": self.homogenize,
            "partial_policy": self.partial_policy,
            "symmetrize": self.symmetrize,
            "k": self.k,
            "beta": self.beta,
            "variant": self.variant,
            "ternary_weights": None if w is None else [w.correct, w.absent, w.reversed],
            "extension_limit": self.extension_limit,
        }


@dataclass
class ReportRecord:
    """One result line.  Exactly one of ``value`` and ``series`` is meaningful."""

    measure: str
    options: dict[str, Any]
    status: str = "ok"
    value: Score | None = None
    series: list[tuple[int, Score | None]] | None = None
    reason: str | None = None
    query_id: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "ok" else UndefinedMeasure.exit_code

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"measure": self.measure}
        if self.query_id is not None:
            out["query"] = self.query_id
        out["options"] = self.options
        out["status"] = self.status
        if self.series is not None:
            out["series"] = [[k, v] for k, v in self.series]
        else:
            out["value"] = self.value
        if self.reason is not None:
            out["reason"] = self.reason
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), allow_nan=False, ensure_ascii=False)


def _inner_measure(options: ComparisonOptions) -> Callable[[PartialRanking, PartialRanking], Score]:
    """The plain measure on (system, reference), including representation conversion."""
    name, rep, k = options.measure, options.representation, options.k
    weights = options.ternary_weights

    def targets(r: PartialRanking):
        return to_pairs(r) if rep == "pairs" else r.items

    def linear(reference: PartialRanking) -> m.RelevanceAssignment:
        if not len(reference):
            raise UndefinedMeasure("relevance is undefined: empty reference ranking")
        return m.linear_relevance(reference)

    if name == "precision":
        return lambda a, b: m.precision(targets(a), targets(b))
    if name == "recall":
        return lambda a, b: m.recall(targets(a), targets(b))
    if name == "fscore":
        return lambda a, b: m.f_score(options.beta, targets(a), targets(b))
    if name == "fallout":
        return lambda a, b: m.fallout(to_pairs(a), b)
    if name == "p_at_k":
        return lambda a, b: m.precision_at_k(a, b, k)
    if name == "r_precision":
        return m.r_precision
    if name == "avep":
        def avep(a, b):
            if k is None:
                return m.average_precision(a, b.items)
            reference = m.as_sequence(b)
            if k > len(reference):
                raise InvalidK(f"k={k} exceeds the reference length {len(reference)}")
            relevant = reference[:k]
            return m.average_precision(a, relevant)
        return avep
    if name == "cg" and rep == "pairs":
        return lambda a, b: m.cumulative_gain(to_pairs(a), m.ternary_pair_relevance(b, weights), k)
    if name == "cg":
        return lambda a, b: m.cumulative_gain(a, linear(b), k)
    if name == "dcg":
        return lambda a, b: m.dcg(a, linear(b), k, options.variant)
    if name == "ndcg":
        return lambda a, b: m.ndcg(a, linear(b), k, options.variant)
    if name == "ncg":
        return lambda a, b: m.ncg(to_pairs(a), b, m.ternary_pair_relevance(b, weights))
    raise InvalidOptions(f"unknown measure {name!r}")  # pragma: no cover


def evaluate(options: ComparisonOptions, a: PartialRanking, b: PartialRanking) -> Score:
    """Run the pipeline on parsed rankings and return the score.

    Raises whatever the stages raise, UndefinedMeasure included.
    """
    inner = _inner_measure(options)

    def one_direction(x: PartialRanking, y: PartialRanking) -> Score:
        if options.homogenize:
            x, y = homogenize(x, y)
        if x.is_total and y.is_total:
            return inner(x, y)
        if options.partial_policy == "max_similarity":
            return max_similarity(x, y, inner, options.extension_limit)
        if options.partial_policy == "min_distance":
            return min_distance(x, y, inner, options.extension_limit)
        if options.rank_indexed:
            raise TiesNotAllowed(
                f"{options.measure} needs total rankings; use a partial policy other than strict"
            )
        return inner(x, y)

    if options.symmetrize:
        return (one_direction(a, b) + one_direction(b, a)) / 2
    return one_direction(a, b)


def compare_command(options: ComparisonOptions, ranking_a: str, ranking_b: str) -> ReportRecord:
    """Compare two rankings given as text.

    An undefined measure becomes a record with status ``"undefined"``; every
    other failure propagates as an exception.
    """
    options.require_k()
    a, b = parse_ranking(ranking_a), parse_ranking(ranking_b)
    record = ReportRecord(options.measure, options.echo())
    try:
        record.value = evaluate(options, a, b)
    except UndefinedMeasure as exc:
        record.status, record.reason = "undefined", str(exc)
    return record


def series_command(options: ComparisonOptions, ranking_a: str, ranking_b: str) -> ReportRecord:
    """Evaluate a rank-based measure at every cutoff k = 1..n.

    n is the system ranking's length after optional homogenization (the
    shorter length for p_at_k or when symmetrizing).  Cutoffs where the
    measure is undefined get ``None`` and mark the record ``"undefined"``.
    """
    if options.measure not in SERIES_MEASURES:
        raise InvalidOptions(f"series supports {', '.join(SERIES_MEASURES)}, not {options.measure}")
    if options.representation != "items":
        raise SeriesRequiresRanking("pair sets have no first elements; use representation items")
    a, b = parse_ranking(ranking_a), parse_ranking(ranking_b)
    if options.homogenize:
        a, b = homogenize(a, b)
    n = min(len(a), len(b)) if options.measure == "p_at_k" or options.symmetrize else len(a)
    record = ReportRecord(options.measure, options.echo(), series=[])
    reasons = []
    for k in range(1, n + 1):
        try:
            value = evaluate(replace(options, k=k), a, b)
        except UndefinedMeasure as exc:
            value = None
            reasons.append(f"k={k}: {exc}")
        record.series.append((k, value))
    if not record.series:
        reasons.append("no cutoff to evaluate: empty ranking")
    if reasons:
        record.status, record.reason = "undefined", "; ".join(reasons)
    return record


@dataclass
class BatchReport:
    records: list[ReportRecord]
    aggregate: ReportRecord

    @property
    def exit_code(self) -> int:
        if not self.records and self.aggregate.status != "ok":
            return EmptyQuerySet.exit_code
        return self.aggregate.exit_code

    def lines(self) -> list[str]:
        return [r.to_json() for r in self.records] + [self.aggregate.to_json()]


def _read_batch(path: str | Path) -> tuple[list[tuple[int, str, str, str]], list[dict[str, Any]]]:
    rows, errors = [], []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                errors.append({"line": lineno, "reason": f"expected 3 tab-separated fields, got {len(fields)}"})
                continue
            query_id = fields[0].strip()
            if not query_id:
                errors.append({"line": lineno, "reason": "empty query id"})
                continue
            if query_id in seen:
                errors.append({"line": lineno, "reason": f"duplicate query id {query_id!r}"})
                continue
            seen.add(query_id)
            rows.append((lineno, query_id, fields[1], fields[2]))
    return rows, errors


def batch_command(options: ComparisonOptions, batch_file: str | Path) -> BatchReport:
    """Score every query of a TSV batch file and average the defined scores.

    Lines are ``query_id<TAB>system<TAB>reference``; blank lines and lines
    starting with ``#`` are skipped.  Malformed lines and per-query failures
    are reported with their line number and excluded from the mean.  Only
    I/O errors abort the batch.
    """
    options.require_k()
    rows, errors = _read_batch(batch_file)
    records = []
    scores: dict[str, Score | None] = {}
    for lineno, query_id, text_a, text_b in rows:
        record = ReportRecord(options.measure, options.echo(), query_id=query_id)
        try:
            record.value = evaluate(options, parse_ranking(text_a), parse_ranking(text_b))
            scores[query_id] = record.value
        except UndefinedMeasure as exc:
            record.status, record.reason = "undefined", str(exc)
            scores[query_id] = None
        except RankingError as exc:
            record.status, record.reason = "error", f"line {lineno}: {exc}"
            errors.append({"line": lineno, "query": query_id, "reason": str(exc)})
        records.append(record)
    records.sort(key=lambda r: r.query_id)
    errors.sort(key=lambda e: e["line"])

    aggregate = ReportRecord(options.measure, options.echo())
    try:
        aggregate.value = mean_over_queries(scores)
    except (UndefinedMeasure, EmptyQuerySet) as exc:
        aggregate.status, aggregate.reason = "undefined", str(exc)
    aggregate.extra = {
        "aggregate": "mean",
        "queries": len(records),
        "defined": sum(v is not None for v in scores.values()),
        "excluded": sorted(q for q, v in scores.items() if v is None),
        "errors": errors,
    }
    return BatchReport(records, aggregate)
