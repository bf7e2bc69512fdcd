"""Exception classes raised by rankcmp.

Every error carries an ``exit_code`` so the command line front end can map
each failure class to a distinct process status.
"""

from __future__ import annotations


class RankingError(Exception):
    """Base class for all rankcmp errors."""

    exit_code = 1


class RankingSyntaxError(RankingError, ValueError):
    """Ranking text does not match the grammar."""

    exit_code = 3

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class InvalidItem(RankingError, ValueError):
    """An item identifier is empty or contains reserved characters."""

    exit_code = 4


class DuplicateItem(RankingError, ValueError):
    """The same item appears more than once in a ranking."""

    exit_code = 4

    def __init__(self, item: str) -> None:
        super().__init__(f"duplicate item {item!r}")
        self.item = item


class InvalidOptions(RankingError, ValueError):
    """Inconsistent comparison options."""

    exit_code = 5


class InvalidK(RankingError, ValueError):
    """Cutoff k is outside the range accepted by a measure."""

    exit_code = 6


class TiesNotAllowed(RankingError, ValueError):
    """A rank-indexed measure received a ranking with tied items."""

    exit_code = 7


class SeriesRequiresRanking(RankingError, ValueError):
    """A k-series was requested on the unordered pair representation."""

    exit_code = 8


class ExtensionLimitExceeded(RankingError):
    """Enumerating total extensions would exceed the caller's limit."""

    exit_code = 9

    def __init__(self, count: int, limit: int) -> None:
        super().__init__(f"{count} extensions exceed the limit of {limit}")
        self.count = count
        self.limit = limit


class UndefinedMeasure(RankingError, ArithmeticError):
    """A measure has a zero denominator for the given inputs."""

    exit_code = 10


class EmptyQuerySet(RankingError, ValueError):
    """Aggregation was requested over zero queries."""

    exit_code = 11


class InvalidSize(RankingError, ValueError):
    exit_code = 12


class IndexOutOfRange(RankingError, IndexError):
    exit_code = 13


class KindMismatch(RankingError, TypeError):
    """A relevance assignment was applied to the wrong target kind."""

    exit_code = 14


IO_EXIT_CODE = 15
