"""
Rank-based AUC with midrank ties.
"""

from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from ..exceptions import InvalidInputError


def evaluate_auc(scores_positive: Sequence[float], scores_negative: Sequence[float]) -> float:
    """
    Probability that a positive outscores a negative, ties counting one half.

    Raises:
        InvalidInputError: If either list is empty
    """
    positive = np.asarray(scores_positive, dtype=np.float64).reshape(-1)
    negative = np.asarray(scores_negative, dtype=np.float64).reshape(-1)
    if positive.size == 0 or negative.size == 0:
        raise InvalidInputError("AUC needs at least one positive and one negative score")
    ranks = rankdata(np.concatenate([positive, negative]), method="average")
    n_pos = positive.size
    u_statistic = ranks[:n_pos].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u_statistic / (n_pos * negative.size))


def auc_by_pair_count(
    scores_positive: Sequence[float], scores_negative: Sequence[float]
) -> float:
    """Exhaustive pair counting; quadratic, used for cross-checks."""
    positive = np.asarray(scores_positive, dtype=np.float64).reshape(-1, 1)
    negative = np.asarray(scores_negative, dtype=np.float64).reshape(1, -1)
    if positive.size == 0 or negative.size == 0:
        raise InvalidInputError("AUC needs at least one positive and one negative score")
    wins = (positive > negative).sum() + 0.5 * (positive == negative).sum()
    return float(wins / (positive.size * negative.size))
