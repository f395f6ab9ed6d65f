"""
Per-branch merge statistics of a trained branched autoencoder.
"""

import numpy as np
import pandas as pd

from ..analysis import batch_stats_of
from ..geometry import Norm
from .autoencoder import BranchedAutoencoder
from .training import encode_array

BRANCH_COLUMNS = ["branch", "alpha_hat", "eps_hat", "beta_hat", "batch_size", "batch_count"]


def branch_death_statistics(
    model: BranchedAutoencoder,
    data: np.ndarray,
    batch_size: int,
    batches: int,
    seed: int = 0,
    norm: Norm = Norm.L1,
) -> pd.DataFrame:
    """Connectivity statistics of every branch over random batches of encoded ``data``."""
    latent = encode_array(model, data)
    rows = []
    for j in range(model.branches):
        branch = latent[:, model.branch_dim * j: model.branch_dim * (j + 1)]
        rng = np.random.default_rng([seed, j])
        stats = batch_stats_of(branch, batch_size, batches, rng, norm)
        rows.append({"branch": j, **stats.model_dump()})
    return pd.DataFrame(rows, columns=BRANCH_COLUMNS)
