# Description: Agreement metrics between agent ratings and a human annotator panel.

import itertools
import numpy as np
from enum import Enum
from collections import Counter
from typing import Optional, Sequence
from loguru import logger
from scipy.stats import spearmanr
from statsmodels.stats.inter_rater import (
    aggregate_raters,
    cohens_kappa,
    fleiss_kappa as _fleiss_kappa,
    to_table,
)
from pydantic import BaseModel, ConfigDict, Field
from CogSystem.errors import MetricError, UndefinedMetricError

LIKERT = (1, 2, 3, 4, 5)


class Polarity(str, Enum):
    NEGATIVE = "negative"
    NEUTRAL = "neutral"
    POSITIVE = "positive"


_POLARITY_CODE = {Polarity.NEGATIVE: -1, Polarity.NEUTRAL: 0, Polarity.POSITIVE: 1}


class RatingVector(BaseModel):
    """Ratings of one iteration, aligned to questionnaire order."""

    model_config = ConfigDict(frozen=True)

    iteration: int
    ratings: list[int] = Field(min_length=1)


def _check_rating(r: int) -> int:
    if isinstance(r, bool) or not isinstance(r, (int, np.integer)) or not 1 <= r <= 5:
        raise MetricError(f"Rating {r!r} is not an integer between 1 and 5")
    return int(r)


def to_polarity(r: int) -> Polarity:
    """Group a rating: 1-2 negative, 3 neutral, 4-5 positive.

    Raises:
        `MetricError`: `r` is not a rating between 1 and 5.
    """
    r = _check_rating(r)
    if r <= 2:
        return Polarity.NEGATIVE
    if r == 3:
        return Polarity.NEUTRAL
    return Polarity.POSITIVE


def polarity_codes(ratings: Sequence[int]) -> list[int]:
    """Ratings mapped to polarity codes -1, 0, 1."""
    return [_POLARITY_CODE[to_polarity(r)] for r in ratings]


def _paired(a: Sequence, b: Sequence) -> np.ndarray:
    if len(a) != len(b):
        raise MetricError(f"Rating vectors differ in length ({len(a)} vs {len(b)})")
    if len(a) == 0:
        raise MetricError("Rating vectors are empty")
    return np.column_stack([np.asarray(a), np.asarray(b)])


def cohen_kappa(a: Sequence[int], b: Sequence[int]) -> float:
    """Cohen's kappa of two raters over the categories they used.

    Perfect observed agreement gives 1.0, which also covers the single-category case.

    Raises:
        `MetricError`: The vectors are empty or of different lengths.
    """
    data = _paired(a, b)
    if np.all(data[:, 0] == data[:, 1]):
        return 1.0
    table, _ = to_table(data)
    return float(cohens_kappa(table, return_results=False))


def authenticity(agent: Sequence[int], human: Sequence[int]) -> float:
    """Agreement between the agent's ratings and the human majority ratings of one iteration.

    One kappa is computed over the iteration's paired ratings.
    """
    return cohen_kappa(agent, human)


def authenticity_polarity(agent: Sequence[int], human: Sequence[int]) -> float:
    return cohen_kappa(polarity_codes(agent), polarity_codes(human))


def authenticity_literal(agent: Sequence[int], human: Sequence[int]) -> float:
    """Per-question reading: the mean of exact agreements (1 when equal, else 0)."""
    data = _paired(agent, human)
    return float(np.mean(data[:, 0] == data[:, 1]))


def fleiss_kappa(matrix: Sequence[Sequence[int]]) -> float:
    """Fleiss' kappa from an items x categories matrix of rating counts.

    Raises:
        `MetricError`: No items, rows with different rater counts, or fewer than two raters per item.
    """
    table = np.asarray(matrix, dtype=float)
    if table.ndim != 2 or table.shape[0] == 0:
        raise MetricError("Fleiss' kappa needs at least one item")
    if np.any(table < 0):
        raise MetricError("Rating counts must be non-negative")
    raters = table.sum(axis=1)
    if not np.all(raters == raters[0]):
        raise MetricError("Every item must have the same number of ratings")
    if raters[0] < 2:
        raise MetricError("Fleiss' kappa needs at least two raters per item")
    p = table.sum(axis=0) / table.sum()
    if np.isclose(float(np.sum(p**2)), 1.0):
        return 1.0
    return float(_fleiss_kappa(table, method="fleiss"))


def panel_fleiss(panel: Sequence[Sequence[int]]) -> float:
    """Fleiss' kappa of an items x raters matrix of raw ratings."""
    counts, _ = aggregate_raters(np.asarray(panel))
    return fleiss_kappa(counts)


def spearman_rho(a: Sequence[float], b: Sequence[float]) -> float:
    """Spearman's rank correlation with mean ranks for ties.

    Raises:
        `MetricError`: Lengths differ or fewer than two values.
        `UndefinedMetricError`: Either input is constant.
    """
    if len(a) != len(b):
        raise MetricError(f"Vectors differ in length ({len(a)} vs {len(b)})")
    if len(a) < 2:
        raise MetricError("Spearman's rho needs at least two values")
    if len(set(a)) < 2 or len(set(b)) < 2:
        raise UndefinedMetricError("Spearman's rho is undefined for a constant vector")
    rho, _ = spearmanr(a, b)
    return float(rho)


def mean_pairwise_spearman(panel: dict[str, Sequence[int]]) -> Optional[float]:
    """Mean Spearman's rho over all annotator pairs; undefined pairs are left out.

    Returns:
        `Optional[float]`: The mean, or `None` when no pair is defined.
    """
    values = []
    for (x, a), (y, b) in itertools.combinations(sorted(panel.items()), 2):
        try:
            values.append(spearman_rho(a, b))
        except UndefinedMetricError:
            logger.warning(f"Spearman's rho undefined for annotators {x} and {y}")
    if not values:
        return None
    return float(np.mean(values))


def majority_rating(ratings: Sequence[int]) -> int:
    """The most frequent rating. Ties go to the mode nearest the panel median, then to the lower rating.

    Raises:
        `MetricError`: `ratings` is empty.
    """
    if len(ratings) == 0:
        raise MetricError("Cannot take the majority of no ratings")
    counts = Counter(int(r) for r in ratings)
    top = max(counts.values())
    modes = [r for r, c in counts.items() if c == top]
    median = float(np.median(ratings))
    return min(modes, key=lambda r: (abs(r - median), r))
