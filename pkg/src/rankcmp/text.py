"""Text notation for rankings.

Grammar (whitespace allowed between tokens)::

    ranking := tier ('>' tier)*        empty input is the empty ranking
    tier    := item | '(' item (',' item)+ ')'
    item    := [A-Za-z0-9_.-]+

``"a > (b, c) > d"`` ranks ``a`` first, ``b`` and ``c`` tied second, ``d`` last.
"""

from __future__ import annotations

import re

from .core import PartialRanking, TotalRanking
from .errors import RankingSyntaxError

_TOKEN = re.compile(r"\s*(?:(?P<item>[A-Za-z0-9_.\-]+)|(?P<punct>[>(),])|(?P<bad>\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:  # only trailing whitespace is left
            break
        kind = match.lastgroup
        start = match.start(kind)
        if kind == "bad":
            raise RankingSyntaxError(f"unexpected character {match.group(kind)!r}", start)
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    return tokens


def parse_ranking(text: str) -> PartialRanking:
    """Parse ranking text; a ranking without ties comes back as a TotalRanking.

    Raises:
        RankingSyntaxError: text does not match the grammar (carries the offset).
        DuplicateItem: an item occurs twice.
    """
    tokens = _tokenize(text)
    if not tokens:
        return TotalRanking()
    tiers: list[list[str]] = []
    i = 0

    def expect(*accepted: str) -> str:
        """Consume one token whose value (or kind, for items) is in ``accepted``."""
        nonlocal i
        wanted = " or ".join(a if a == "item" else repr(a) for a in accepted)
        if i >= len(tokens):
            raise RankingSyntaxError(f"unexpected end of input, expected {wanted}", len(text))
        kind, value, position = tokens[i]
        if (kind == "item" and "item" in accepted) or (kind == "punct" and value in accepted):
            i += 1
            return value
        raise RankingSyntaxError(f"unexpected {value!r}, expected {wanted}", position)

    while True:
        value = expect("item", "(")
        if value != "(":
            tiers.append([value])
        else:
            tier = [expect("item")]
            expect(",")
            tier.append(expect("item"))
            while expect(",", ")") == ",":
                tier.append(expect("item"))
            tiers.append(tier)
        if i == len(tokens):
            break
        expect(">")

    if all(len(tier) == 1 for tier in tiers):
        return TotalRanking(tier[0] for tier in tiers)
    return PartialRanking(tuple(tiers))


def format_ranking(r: PartialRanking) -> str:
    """Canonical text: ``" > "`` between tiers, tied items sorted and parenthesized."""
    return str(r)
