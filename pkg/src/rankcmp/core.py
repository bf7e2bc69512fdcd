"""Ranking data model, ordered-pair encoding and the three mitigation procedures.

A :class:`PartialRanking` is a sequence of tiers, each tier a set of items
sharing one rank (tier 0 is the top).  A :class:`TotalRanking` is the special
case where every tier holds exactly one item.

The procedures implemented here:

* :func:`to_pairs` replaces a ranking by the set of ordered pairs it implies,
  so order-insensitive set measures become order aware.
* :func:`max_similarity` / :func:`min_distance` compare two partial rankings
  through all their total extensions and keep the best value.
* :func:`homogenize` restricts two rankings to the items they share.
"""

from __future__ import annotations

import itertools
import math
import re
from collections.abc import Callable, Collection, Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Union

from .errors import DuplicateItem, ExtensionLimitExceeded, InvalidItem, UndefinedMeasure

ITEM_PATTERN = re.compile(r"[A-Za-z0-9_.\-]+")

Score = float
RankingLike = Union["PartialRanking", Sequence[str]]


def validate_item(item: object) -> str:
    """Return ``item`` unchanged if it is a legal identifier, else raise InvalidItem."""
    if not isinstance(item, str) or not ITEM_PATTERN.fullmatch(item):
        raise InvalidItem(f"invalid item identifier {item!r}")
    return item


@dataclass(frozen=True, eq=False)
class PartialRanking:
    """Items grouped into ordered tiers of equal rank.

    ``tiers`` may be given as any iterable of iterables; it is normalized to a
    tuple of frozensets.  Empty tiers and repeated items are rejected.
    """

    tiers: tuple[frozenset[str], ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        normalized = []
        for tier in self.tiers:
            if isinstance(tier, str):
                tier = (tier,)
            members = []
            for item in tier:
                validate_item(item)
                if item in seen:
                    raise DuplicateItem(item)
                seen.add(item)
                members.append(item)
            if not members:
                raise ValueError("tiers must be non-empty")
            normalized.append(frozenset(members))
        object.__setattr__(self, "tiers", tuple(normalized))
        object.__setattr__(self, "_items", frozenset(seen))
        object.__setattr__(self, "_hash", hash(self.tiers))

    @classmethod
    def from_sequence(cls, items: Iterable[str]) -> PartialRanking:
        """Singleton-tier ranking in the given order."""
        return cls(tuple((item,) for item in items))

    @property
    def items(self) -> frozenset[str]:
        return self._items  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self._items)  # type: ignore[attr-defined]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialRanking):
            return NotImplemented
        return self.tiers == other.tiers

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    def __reduce__(self):
        # the cached hash is process-specific, so rebuild instead of copying __dict__
        return (PartialRanking, (self.tiers,))

    def __str__(self) -> str:
        parts = []
        for tier in self.tiers:
            names = sorted(tier)
            parts.append(names[0] if len(names) == 1 else "(" + ", ".join(names) + ")")
        return " > ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    @property
    def is_total(self) -> bool:
        return all(len(tier) == 1 for tier in self.tiers)

    def tier_index(self, item: str) -> int:
        for index, tier in enumerate(self.tiers):
            if item in tier:
                return index
        raise KeyError(item)

    def restrict(self, keep: Collection[str]) -> PartialRanking:
        """Drop items not in ``keep``; tiers emptied by removal disappear."""
        kept = (tier.intersection(keep) for tier in self.tiers)
        return PartialRanking(tuple(tier for tier in kept if tier))

    def to_total(self) -> TotalRanking:
        """Convert a ranking without ties; raises ValueError if any tier is shared."""
        if not self.is_total:
            raise ValueError(f"{self} has tied items")
        return TotalRanking(next(iter(tier)) for tier in self.tiers)


class TotalRanking(PartialRanking):
    """A ranking with one item per rank; also behaves as a sequence of items."""

    def __init__(self, items: Iterable[str] = ()) -> None:
        sequence = tuple(items)
        super().__init__(tuple((item,) for item in sequence))
        object.__setattr__(self, "sequence", sequence)

    sequence: tuple[str, ...]

    def __iter__(self) -> Iterator[str]:
        return iter(self.sequence)

    def __getitem__(self, index):
        return self.sequence[index]

    def __reduce__(self):
        return (TotalRanking, (self.sequence,))

    def restrict(self, keep: Collection[str]) -> TotalRanking:
        return TotalRanking(item for item in self.sequence if item in keep)

    def to_total(self) -> TotalRanking:
        return self


class OrderedPair(NamedTuple("_Pair", [("above", str), ("below", str)])):
    """The statement "``above`` is ranked higher than ``below``"."""

    __slots__ = ()

    def __new__(cls, above: str, below: str) -> OrderedPair:
        if above == below:
            raise ValueError(f"an item cannot be above itself: {above!r}")
        return super().__new__(cls, above, below)

    def reversed(self) -> OrderedPair:
        return OrderedPair(self.below, self.above)

    def __str__(self) -> str:
        return f"{self.above}>{self.below}"

    def __repr__(self) -> str:
        return f"OrderedPair({self.above!r}, {self.below!r})"


PairSet = frozenset[OrderedPair]


def as_partial(r: RankingLike) -> PartialRanking:
    if isinstance(r, PartialRanking):
        return r
    return TotalRanking(r)


def to_pairs(r: RankingLike) -> PairSet:
    """Encode a ranking as the set of every (higher, lower) pair it implies.

    Items of the same tier yield no pair, so the result is antisymmetric and
    transitively closed.

    >>> sorted(str(p) for p in to_pairs(TotalRanking("abc")))
    ['a>b', 'a>c', 'b>c']
    """
    return _pairs_of(as_partial(r))


@lru_cache(maxsize=1 << 14)
def _pairs_of(r: PartialRanking) -> PairSet:
    # rankings are immutable, and extension search asks for the same ones repeatedly
    tiers = r.tiers
    pairs = set()
    for i, upper in enumerate(tiers):
        for lower in tiers[i + 1:]:
            pairs.update(OrderedPair(x, y) for x in upper for y in lower)
    return frozenset(pairs)


def reverse_pairs(pairs: Iterable[OrderedPair]) -> PairSet:
    return frozenset(p.reversed() for p in pairs)


def is_antisymmetric(pairs: Collection[OrderedPair]) -> bool:
    return not any(p.reversed() in pairs for p in pairs)


def homogenize(a: RankingLike, b: RankingLike) -> tuple[PartialRanking, PartialRanking]:
    """Restrict both rankings to the items they have in common.

    Surviving items keep their relative order; tiers left empty are dropped.
    Rankings with no shared item both become empty.
    """
    a, b = as_partial(a), as_partial(b)
    shared = a.items & b.items
    return a.restrict(shared), b.restrict(shared)


def extension_count(r: RankingLike) -> int:
    """Number of total rankings compatible with ``r``: the product of tier-size factorials."""
    return math.prod(math.factorial(len(tier)) for tier in as_partial(r).tiers)


def iter_extensions(r: RankingLike) -> Iterator[TotalRanking]:
    """Lazily enumerate the total extensions of ``r``.

    Order is deterministic: the product runs over tiers top to bottom, and
    within each tier permutations come in lexicographic order of item ids.
    """
    per_tier = [list(itertools.permutations(sorted(tier))) for tier in as_partial(r).tiers]
    for choice in itertools.product(*per_tier):
        yield TotalRanking(itertools.chain.from_iterable(choice))


def total_extensions(r: RankingLike, limit: int) -> list[TotalRanking]:
    """All total rankings refining ``r``, in deterministic order.

    Raises:
        ExtensionLimitExceeded: if there are more than ``limit`` of them.
    """
    _check_limit(limit)
    count = extension_count(r)
    if count > limit:
        raise ExtensionLimitExceeded(count, limit)
    return list(iter_extensions(r))


def _check_limit(limit: int) -> None:
    if not isinstance(limit, int) or limit < 1:
        raise ValueError(f"extension limit must be a positive integer, got {limit!r}")


def _best_over_extensions(
    a: RankingLike,
    b: RankingLike,
    measure: Callable[[TotalRanking, TotalRanking], Score],
    limit: int,
    better: Callable[[Score, Score], Score],
    initial: Score,
) -> Score:
    _check_limit(limit)
    count = extension_count(a) * extension_count(b)
    if count > limit:
        raise ExtensionLimitExceeded(count, limit)
    best = initial
    undefined: UndefinedMeasure | None = None
    b_extensions = list(iter_extensions(b))
    for a_ext in iter_extensions(a):
        for b_ext in b_extensions:
            try:
                value = measure(a_ext, b_ext)
            except UndefinedMeasure as exc:
                undefined = exc
                continue
            best = better(best, value)
    if math.isinf(best):
        assert undefined is not None
        raise undefined
    return best


def max_similarity(
    a: RankingLike,
    b: RankingLike,
    similarity: Callable[[TotalRanking, TotalRanking], Score],
    limit: int,
) -> Score:
    """Best ``similarity`` over every pair of total extensions of ``a`` and ``b``.

    Ties are treated as missing information rather than conflicts: the
    comparison picks the extensions that agree most.  When both inputs are
    already total this is exactly ``similarity(a, b)``.

    Extension pairs on which ``similarity`` is undefined are skipped; the
    UndefinedMeasure propagates only if no pair is defined.

    Raises:
        ExtensionLimitExceeded: if the product of the two extension counts
            exceeds ``limit``.
    """
    return _best_over_extensions(a, b, similarity, limit, max, -math.inf)


def min_distance(
    a: RankingLike,
    b: RankingLike,
    distance: Callable[[TotalRanking, TotalRanking], Score],
    limit: int,
) -> Score:
    """Counterpart of :func:`max_similarity` for distances: keeps the smallest value."""
    return _best_over_extensions(a, b, distance, limit, min, math.inf)


def symmetrize(measure: Callable[..., Score]) -> Callable[..., Score]:
    """Average a two-argument measure over both argument orders.

    Extra keyword arguments are forwarded to both calls.  Float addition is
    commutative, so the result is exactly symmetric.
    """

    def symmetric(a, b, **kwargs) -> Score:
        return (measure(a, b, **kwargs) + measure(b, a, **kwargs)) / 2

    symmetric.__name__ = f"symmetric_{getattr(measure, '__name__', 'measure')}"
    symmetric.__doc__ = f"Symmetrized {getattr(measure, '__name__', 'measure')}."
    return symmetric
