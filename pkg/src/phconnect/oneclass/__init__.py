"""
Count-based one-class scoring and its evaluation.
"""

from .metrics import auc_by_pair_count, evaluate_auc
from .model import OneClassModel, fit, score, score_latent
from .protocol import OneVsAllResult, one_vs_all

__all__ = [
    "OneClassModel",
    "OneVsAllResult",
    "auc_by_pair_count",
    "evaluate_auc",
    "fit",
    "one_vs_all",
    "score",
    "score_latent",
]
