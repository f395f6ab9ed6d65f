"""
One-vs-all evaluation: one model per class, scored against all classes.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
import structlog

from ..exceptions import InvalidInputError
from ..geometry import Norm
from ..neural.training import Network, encode_array
from .metrics import evaluate_auc
from .model import OneClassModel, score_latent

logger = structlog.get_logger(__name__)

TABLE_COLUMNS = ["run", "label", "auc", "fit_samples", "test_samples"]


@dataclass
class OneVsAllResult:
    table: pd.DataFrame
    skipped: List[Dict[str, object]] = field(default_factory=list)

    def class_means(self) -> pd.DataFrame:
        """Mean AUC per class across runs."""
        return (
            self.table.groupby("label", sort=True)["auc"].mean().reset_index()
            if not self.table.empty
            else pd.DataFrame(columns=["label", "auc"])
        )

    @property
    def mean_auc(self) -> float:
        """Mean over classes of the per-class mean AUC."""
        means = self.class_means()
        return float(means["auc"].mean()) if not means.empty else float("nan")


def one_vs_all(
    encoder: Network,
    features: np.ndarray,
    labels: np.ndarray,
    m: int,
    eta: float,
    seed: int = 0,
    runs: int = 5,
    norm: Norm = Norm.L1,
    train_features: Optional[np.ndarray] = None,
    train_labels: Optional[np.ndarray] = None,
) -> OneVsAllResult:
    """
    Per class: fit on ``m`` random class samples, score the test set, compute AUC.

    Without a separate training set the ``m`` fit samples are drawn from
    ``features`` and left out of that class's test set. Run ``r`` of the
    ``k``-th class in sorted label order draws with the generator seeded by
    ``(seed, r, k)``, so any integer labels work. Classes with fewer than
    ``m`` samples, or without positives or negatives left to score, are
    skipped and reported.
    """
    if m < 1:
        raise InvalidInputError(f"m must be positive, got {m}")
    labels = np.asarray(labels, dtype=np.int64)
    test_latent = encode_array(encoder, features)
    separate_train = train_features is not None
    if separate_train:
        if train_labels is None:
            raise InvalidInputError("train_labels are required with train_features")
        pool_latent = encode_array(encoder, train_features)
        pool_labels = np.asarray(train_labels, dtype=np.int64)
    else:
        pool_latent, pool_labels = test_latent, labels

    rows: List[Dict[str, object]] = []
    skipped: List[Dict[str, object]] = []
    for position, label in enumerate(np.unique(labels).tolist()):
        members = np.flatnonzero(pool_labels == label)
        if members.size < m:
            logger.warning("class_skipped", label=label, available=int(members.size), m=m)
            skipped.append({"label": label, "reason": f"only {members.size} samples for m={m}"})
            continue
        for run in range(runs):
            rng = np.random.default_rng([seed, run, position])
            chosen = rng.choice(members, size=m, replace=False)
            model = OneClassModel.from_latent(pool_latent[chosen], encoder.branches, eta, norm)

            keep = np.ones(labels.shape[0], dtype=bool)
            if not separate_train:
                keep[chosen] = False
            scores = score_latent(model, test_latent[keep])
            positive = labels[keep] == label
            if not positive.any() or positive.all():
                reason = "no positives or negatives left"
                logger.warning("class_skipped", label=label, reason=reason)
                skipped.append({"label": label, "reason": reason})
                break
            rows.append(
                {
                    "run": run,
                    "label": label,
                    "auc": evaluate_auc(scores[positive], scores[~positive]),
                    "fit_samples": m,
                    "test_samples": int(keep.sum()),
                }
            )

    table = pd.DataFrame(rows, columns=TABLE_COLUMNS)
    logger.info("one_vs_all_finished", evaluated=len(rows), skipped=len(skipped))
    return OneVsAllResult(table=table, skipped=skipped)
