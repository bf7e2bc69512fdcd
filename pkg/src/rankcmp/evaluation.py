"""Query-set aggregation plus seeded ranking generators and perturbations.

The generators exist for property tests and sensitivity studies.
:func:`random_ranking` is a stable function of its arguments:

1. ``rng = random.Random(seed)`` (Python's Mersenne Twister).
2. ``chosen = rng.sample(sorted(pool), size)``; the sample order is the ranking order.
3. For each of the ``size - 1`` boundaries, top to bottom, draw
   ``rng.random()``; the boundary becomes a tie when the draw is
   ``< tie_probability``.
"""

from __future__ import annotations

import math
import random
from collections.abc import Callable, Collection, Iterable, Mapping
from dataclasses import dataclass

from .core import PartialRanking, RankingLike, Score, TotalRanking, as_partial
from .errors import EmptyQuerySet, IndexOutOfRange, InvalidSize, UndefinedMeasure
from .measures import as_sequence


@dataclass(frozen=True)
class QueryCase:
    query_id: str
    system: PartialRanking
    reference: PartialRanking

    def __post_init__(self) -> None:
        if not self.query_id:
            raise ValueError("query_id must be non-empty")


@dataclass(frozen=True)
class QuerySet:
    """Ordered collection of query cases with unique ids."""

    cases: tuple[QueryCase, ...]

    def __post_init__(self) -> None:
        cases = tuple(self.cases)
        seen: set[str] = set()
        for case in cases:
            if case.query_id in seen:
                raise ValueError(f"duplicate query id {case.query_id!r}")
            seen.add(case.query_id)
        object.__setattr__(self, "cases", cases)

    def __len__(self) -> int:
        return len(self.cases)

    def __iter__(self):
        return iter(self.cases)


def score_queries(
    query_set: QuerySet | Iterable[QueryCase],
    measure: Callable[[PartialRanking, PartialRanking], Score],
) -> dict[str, Score | None]:
    """Evaluate ``measure(system, reference)`` per query; undefined queries map to None."""
    scores: dict[str, Score | None] = {}
    for case in query_set:
        try:
            scores[case.query_id] = measure(case.system, case.reference)
        except UndefinedMeasure:
            scores[case.query_id] = None
    return scores


def mean_over_queries(per_query: Mapping[str, Score | None]) -> Score:
    """Arithmetic mean of the defined per-query scores.

    ``None`` marks an undefined query; those are left out of the mean.  The
    sum runs in ascending query-id order, so the result does not depend on
    the mapping's iteration order.

    Raises:
        EmptyQuerySet: no queries at all.
        UndefinedMeasure: every query is undefined.
    """
    if not per_query:
        raise EmptyQuerySet("cannot aggregate an empty query set")
    defined = [per_query[q] for q in sorted(per_query) if per_query[q] is not None]
    if not defined:
        raise UndefinedMeasure(f"all {len(per_query)} queries are undefined")
    return math.fsum(defined) / len(defined)


def random_ranking(
    seed: int, pool: Collection[str], size: int, tie_probability: float = 0.0
) -> PartialRanking:
    """Draw ``size`` items from ``pool`` and rank them, merging neighbours into ties at random.

    Returns a :class:`TotalRanking` when no boundary is merged.
    """
    if not isinstance(size, int) or not 0 < size <= len(pool):
        raise InvalidSize(f"size must be in [1, {len(pool)}], got {size!r}")
    if not 0.0 <= tie_probability <= 1.0:
        raise ValueError(f"tie_probability must be in [0, 1], got {tie_probability!r}")
    rng = random.Random(seed)
    chosen = rng.sample(sorted(pool), size)
    tiers = [[chosen[0]]]
    for item in chosen[1:]:
        if rng.random() < tie_probability:
            tiers[-1].append(item)
        else:
            tiers.append([item])
    if len(tiers) == size:
        return TotalRanking(chosen)
    return PartialRanking(tuple(tiers))


def perturb_swap(r: RankingLike, i: int) -> TotalRanking:
    """Exchange the items at positions ``i`` and ``i + 1``."""
    items = list(as_sequence(r))
    if not 0 <= i < len(items) - 1:
        raise IndexOutOfRange(f"swap index {i} outside [0, {len(items) - 2}]")
    items[i], items[i + 1] = items[i + 1], items[i]
    return TotalRanking(items)


def perturb_truncate(r: RankingLike, n: int) -> PartialRanking:
    """Keep the top tiers until at least ``n`` items are covered.

    The tier holding the n-th item is kept whole; splitting it would invent an
    order the input does not contain.
    """
    r = as_partial(r)
    kept: list[frozenset[str]] = []
    covered = 0
    for tier in r.tiers:
        if covered >= n:
            break
        kept.append(tier)
        covered += len(tier)
    if len(kept) == len(r.tiers):
        return r
    if isinstance(r, TotalRanking):
        return TotalRanking(r.sequence[:covered])
    return PartialRanking(tuple(kept))


def perturb_merge(r: RankingLike, tier_index: int) -> PartialRanking:
    """Union tier ``tier_index`` with the tier just below it."""
    tiers = list(as_partial(r).tiers)
    if not 0 <= tier_index < len(tiers) - 1:
        raise IndexOutOfRange(f"merge index {tier_index} outside [0, {len(tiers) - 2}]")
    tiers[tier_index : tier_index + 2] = [tiers[tier_index] | tiers[tier_index + 1]]
    return PartialRanking(tuple(tiers))
