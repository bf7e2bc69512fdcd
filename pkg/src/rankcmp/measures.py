"""Per-query similarity and distance measures.

Set measures (precision, recall, fall-out, F-score) work on item sets or on
ordered-pair sets alike; feed them :func:`rankcmp.core.to_pairs` output to make
them order aware.  Rank-indexed measures (P@k, AveP, DCG, NDCG) need total
rankings.  The cumulative-gain family is parameterized by a
:class:`RelevanceAssignment`.

Zero denominators raise :class:`~rankcmp.errors.UndefinedMeasure`; no measure
ever returns a sentinel for an undefined case.
"""

from __future__ import annotations

import math
from collections.abc import Collection, Hashable, Iterable, Mapping
from collections.abc import Set as AbstractSet
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Literal

from .core import (
    OrderedPair,
    PartialRanking,
    RankingLike,
    Score,
    TotalRanking,
    homogenize,
    to_pairs,
)
from .errors import InvalidK, InvalidOptions, KindMismatch, TiesNotAllowed, UndefinedMeasure

Variant = Literal["classic", "shifted", "exponential"]
VARIANTS: tuple[str, ...] = ("classic", "shifted", "exponential")
TargetKind = Literal["items", "pairs"]


def _ratio(numerator: float, denominator: float, what: str) -> Score:
    if denominator == 0:
        raise UndefinedMeasure(f"{what} is undefined: empty denominator")
    return numerator / denominator


def _kind_of(targets: Iterable[Hashable]) -> str | None:
    for target in targets:
        return "pairs" if isinstance(target, OrderedPair) else "items"
    return None


def _as_set(targets: Collection[Hashable]) -> AbstractSet:
    return targets if isinstance(targets, AbstractSet) else set(targets)


def _same_kind(a: AbstractSet, b: AbstractSet) -> None:
    ka, kb = _kind_of(a), _kind_of(b)
    if ka and kb and ka != kb:
        raise KindMismatch(f"cannot compare a set of {ka} with a set of {kb}")


def as_sequence(r: RankingLike) -> tuple[str, ...]:
    """Items of a total ranking, top first.

    Raises:
        TiesNotAllowed: if ``r`` is a partial ranking with a shared tier.
    """
    if isinstance(r, TotalRanking):
        return r.sequence
    if isinstance(r, PartialRanking):
        if not r.is_total:
            raise TiesNotAllowed(f"{r} has tied items; a total ranking is required")
        return r.to_total().sequence
    return TotalRanking(r).sequence


# -- precision / recall family ------------------------------------------------


def precision(retrieved: Collection[Hashable], relevant: Collection[Hashable]) -> Score:
    """Fraction of retrieved targets that are relevant."""
    retrieved, relevant = _as_set(retrieved), _as_set(relevant)
    _same_kind(retrieved, relevant)
    return _ratio(len(retrieved & relevant), len(retrieved), "precision")


def recall(retrieved: Collection[Hashable], relevant: Collection[Hashable]) -> Score:
    """Fraction of relevant targets that are retrieved; ``recall(x, y) == precision(y, x)``."""
    retrieved, relevant = _as_set(retrieved), _as_set(relevant)
    _same_kind(retrieved, relevant)
    return _ratio(len(retrieved & relevant), len(relevant), "recall")


def fallout(retrieved: Collection[OrderedPair], reference: RankingLike) -> Score:
    """Share of the reference's pairs that the retrieved set states the other way round.

    Only reversed pairs count; pairs the reference says nothing about are
    ignored.  This is a distance: 0 is best.
    """
    ref_pairs = to_pairs(reference)
    retrieved = _as_set(retrieved)
    _same_kind(retrieved, ref_pairs)
    reversed_hits = sum(1 for p in ref_pairs if p.reversed() in retrieved)
    return _ratio(reversed_hits, len(ref_pairs), "fall-out")


def f_beta(precision_value: float, recall_value: float, beta: float) -> Score:
    """Weighted harmonic mean of precision and recall; 0 when both are 0."""
    if not beta > 0 or not math.isfinite(beta):
        raise InvalidOptions(f"beta must be a positive finite number, got {beta!r}")
    b2 = beta * beta
    denominator = b2 * precision_value + recall_value
    if denominator == 0:
        return 0.0
    return (1 + b2) * precision_value * recall_value / denominator


def f_score(beta: float, retrieved: Collection[Hashable], relevant: Collection[Hashable]) -> Score:
    """F-beta of ``retrieved`` against ``relevant``.

    ``beta`` < 1 favours precision, ``beta`` > 1 favours recall.
    """
    return f_beta(precision(retrieved, relevant), recall(retrieved, relevant), beta)


def precision_at_k(system: RankingLike, reference: RankingLike, k: int) -> Score:
    """Overlap of the two top-k item sets, divided by k.

    Both rankings are truncated, so this compares which items each one puts
    at the top.  Requires ``1 <= k <= min(len(system), len(reference))``.
    """
    sys_seq, ref_seq = as_sequence(system), as_sequence(reference)
    if not isinstance(k, int) or not 1 <= k <= min(len(sys_seq), len(ref_seq)):
        raise InvalidK(
            f"k={k!r} outside [1, {min(len(sys_seq), len(ref_seq))}] for precision at k"
        )
    return len(set(sys_seq[:k]) & set(ref_seq[:k])) / k


def r_precision(system: RankingLike, reference: RankingLike) -> Score:
    """Pair precision after homogenization.

    With pairs as targets and both rankings cut down to their shared items,
    taking k = number of relevant pairs collapses R-precision onto plain
    precision.
    """
    a, b = homogenize(system, reference)
    return precision(to_pairs(a), to_pairs(b))


def average_precision(system: RankingLike, relevant: Collection[str]) -> Score:
    """Mean of the precision at each rank holding a relevant item.

    The denominator is always ``len(relevant)``, so relevant items the system
    never ranks pull the score down.
    """
    relevant = _as_set(relevant)
    if not relevant:
        raise UndefinedMeasure("average precision is undefined: no relevant items")
    total = 0.0
    hits = 0
    for k, item in enumerate(as_sequence(system), start=1):
        if item in relevant:
            hits += 1
            total += hits / k
    return total / len(relevant)


# -- relevance assignments --------------------------------------------------------


@dataclass(frozen=True)
class RelevanceAssignment:
    """Non-negative relevance scores for items or ordered pairs.

    Targets missing from ``scores`` get ``default`` (0 unless stated).
    """

    kind: TargetKind
    scores: Mapping[Hashable, float] = field(default_factory=dict)
    default: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("items", "pairs"):
            raise ValueError(f"unknown target kind {self.kind!r}")
        for target, value in self.scores.items():
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"relevance of {target} must be finite and >= 0, got {value!r}")
        if not (math.isfinite(self.default) and self.default >= 0):
            raise ValueError(f"default relevance must be finite and >= 0, got {self.default!r}")
        object.__setattr__(self, "scores", MappingProxyType(dict(self.scores)))

    def __call__(self, target: Hashable) -> float:
        return self.scores.get(target, self.default)


@dataclass(frozen=True)
class TernaryWeights:
    """Relevance of a pair that the reference confirms, ignores, or contradicts."""

    correct: float = 1.0
    absent: float = 0.5
    reversed: float = 0.0

    def __post_init__(self) -> None:
        if not all(math.isfinite(w) for w in (self.correct, self.absent, self.reversed)):
            raise ValueError("ternary weights must be finite")
        if not self.correct >= self.absent >= self.reversed >= 0:
            raise ValueError(
                "ternary weights must satisfy correct >= absent >= reversed >= 0, got "
                f"{self.correct}, {self.absent}, {self.reversed}"
            )


def linear_relevance(reference: RankingLike) -> RelevanceAssignment:
    """Give the bottom item 1, the next 2, ..., the top item n."""
    sequence = as_sequence(reference)
    if not sequence:
        raise ValueError("linear relevance needs a non-empty reference")
    n = len(sequence)
    return RelevanceAssignment("items", {item: float(n - i) for i, item in enumerate(sequence)})


def binary_pair_relevance(reference: RankingLike) -> RelevanceAssignment:
    return RelevanceAssignment("pairs", dict.fromkeys(to_pairs(reference), 1.0))


def ternary_pair_relevance(
    reference: RankingLike, weights: TernaryWeights | None = None
) -> RelevanceAssignment:
    """Score pairs by agreement with ``reference``: correct, reversed, or absent."""
    w = weights or TernaryWeights()
    scores: dict[Hashable, float] = {}
    for p in to_pairs(reference):
        scores[p] = w.correct
        scores[p.reversed()] = w.reversed
    return RelevanceAssignment("pairs", scores, default=w.absent)


# -- cumulative gain family ----------------------------------------------------------


def _check_kind(rel: RelevanceAssignment, expected: str) -> None:
    if rel.kind != expected:
        raise KindMismatch(f"relevance over {rel.kind} applied to {expected}")


def _prefix(subject: RankingLike, rel: RelevanceAssignment, k: int) -> tuple[str, ...]:
    _check_kind(rel, "items")
    sequence = as_sequence(subject)
    if not isinstance(k, int) or not 1 <= k <= len(sequence):
        raise InvalidK(f"k={k!r} outside [1, {len(sequence)}]")
    return sequence[:k]


def cumulative_gain(
    subject: RankingLike | AbstractSet[OrderedPair],
    rel: RelevanceAssignment,
    k: int | None = None,
) -> Score:
    """Sum of relevance over the first ``k`` ranked items, or over a whole pair set.

    A pair set has no "first" elements, so for one ``k`` defaults to, and must
    equal, its size.
    """
    if isinstance(subject, AbstractSet):
        _check_kind(rel, "pairs")
        if k is None:
            k = len(subject)
        if k != len(subject):
            raise InvalidK(f"k must equal the pair-set size {len(subject)}, got {k!r}")
        # sorted so the float sum is reproducible
        return math.fsum(rel(p) for p in sorted(subject))
    if k is None:
        k = len(as_sequence(subject))
    return math.fsum(rel(item) for item in _prefix(subject, rel, k))


def _gain(value: float, variant: str) -> float:
    return 2.0**value - 1 if variant == "exponential" else value


def _discount(rank: int, variant: str) -> float:
    if variant == "classic":
        return 1.0 if rank == 1 else math.log2(rank)
    return math.log2(rank + 1)


def dcg(subject: RankingLike, rel: RelevanceAssignment, k: int, variant: Variant) -> Score:
    """Discounted cumulative gain at ``k`` (log base 2).

    Variants:
        classic: ``rel_1 + sum_{i>=2} rel_i / log2(i)``
        shifted: ``sum rel_i / log2(i + 1)``
        exponential: ``sum (2**rel_i - 1) / log2(i + 1)``
    """
    if variant not in VARIANTS:
        raise InvalidOptions(f"unknown DCG variant {variant!r}")
    prefix = _prefix(subject, rel, k)
    return sum(_gain(rel(item), variant) / _discount(i, variant) for i, item in enumerate(prefix, 1))


def ideal_ordering(subject: RankingLike, rel: RelevanceAssignment) -> TotalRanking:
    """Subject's items by decreasing relevance, ties broken by item id."""
    return TotalRanking(sorted(as_sequence(subject), key=lambda item: (-rel(item), item)))


def ndcg(subject: RankingLike, rel: RelevanceAssignment, k: int, variant: Variant) -> Score:
    """DCG divided by the DCG of the ideal reordering of the same items."""
    ideal = dcg(ideal_ordering(subject, rel), rel, k, variant)
    if ideal == 0:
        raise UndefinedMeasure("NDCG is undefined: ideal DCG is 0")
    return dcg(subject, rel, k, variant) / ideal


def ncg(
    subject: AbstractSet[OrderedPair],
    reference: RankingLike,
    rel: RelevanceAssignment | None = None,
) -> Score:
    """Cumulative gain of a pair set, normalized by the gain of the reference's own pairs.

    ``rel`` defaults to :func:`ternary_pair_relevance` of ``reference`` with
    default weights.
    """
    if rel is None:
        rel = ternary_pair_relevance(reference)
    ideal = cumulative_gain(to_pairs(reference), rel)
    if ideal == 0:
        raise UndefinedMeasure("NCG is undefined: ideal CG is 0")
    return cumulative_gain(frozenset(subject), rel) / ideal
