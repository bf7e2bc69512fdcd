import random

import pytest
from hypothesis import strategies as st

from rankcmp import PartialRanking, TotalRanking

ALPHABET = [chr(c) for c in range(ord("a"), ord("a") + 12)]


@st.composite
def partial_rankings(draw, pool=ALPHABET, min_size=0, max_size=8):
    items = draw(st.lists(st.sampled_from(pool), min_size=min_size, max_size=max_size, unique=True))
    if not items:
        return PartialRanking()
    cuts = draw(st.lists(st.booleans(), min_size=len(items) - 1, max_size=len(items) - 1))
    tiers = [[items[0]]]
    for item, cut in zip(items[1:], cuts):
        if cut:
            tiers.append([item])
        else:
            tiers[-1].append(item)
    return PartialRanking(tuple(tiers))


@st.composite
def total_rankings(draw, pool=ALPHABET, min_size=0, max_size=8):
    items = draw(st.lists(st.sampled_from(pool), min_size=min_size, max_size=max_size, unique=True))
    return TotalRanking(items)


def random_partial(rng: random.Random, pool=ALPHABET, max_size=8, tie_p=0.4):
    """Plain-random counterpart of partial_rankings() for fixed-count loops."""
    size = rng.randint(0, max_size)
    items = rng.sample(pool, size)
    tiers = []
    for item in items:
        if tiers and rng.random() < tie_p:
            tiers[-1].append(item)
        else:
            tiers.append([item])
    return PartialRanking(tuple(tiers))


@pytest.fixture
def rng():
    return random.Random(20160315)
