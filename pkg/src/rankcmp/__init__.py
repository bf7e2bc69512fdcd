"""Compare rankings that may be incomplete and partially ordered.

Rankings are turned into sets of ordered pairs, compared through their total
extensions, and restricted to shared items, so that the usual IR measures
(precision, recall, fall-out, F-score, P@k, AveP, CG/DCG/NDCG) can score them.
"""

from .core import (
    OrderedPair,
    PairSet,
    PartialRanking,
    TotalRanking,
    extension_count,
    homogenize,
    iter_extensions,
    max_similarity,
    min_distance,
    symmetrize,
    to_pairs,
    total_extensions,
)
from .errors import (
    DuplicateItem,
    EmptyQuerySet,
    ExtensionLimitExceeded,
    IndexOutOfRange,
    InvalidItem,
    InvalidK,
    InvalidOptions,
    InvalidSize,
    KindMismatch,
    RankingError,
    RankingSyntaxError,
    SeriesRequiresRanking,
    TiesNotAllowed,
    UndefinedMeasure,
)
from .evaluation import (
    QueryCase,
    QuerySet,
    mean_over_queries,
    perturb_merge,
    perturb_swap,
    perturb_truncate,
    random_ranking,
    score_queries,
)
from .measures import (
    RelevanceAssignment,
    TernaryWeights,
    average_precision,
    binary_pair_relevance,
    cumulative_gain,
    dcg,
    f_beta,
    f_score,
    fallout,
    linear_relevance,
    ncg,
    ndcg,
    precision,
    precision_at_k,
    r_precision,
    recall,
    ternary_pair_relevance,
)
from .pipeline import ComparisonOptions, ReportRecord, batch_command, compare_command, series_command
from .text import format_ranking, parse_ranking

__version__ = "0.1.0"
