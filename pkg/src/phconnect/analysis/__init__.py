"""
Connectivity statistics, predicates and bounds for latent batches.
"""

from .bounds import (
    AnnulusSpec,
    batch_size_condition,
    entropy_bound,
    entropy_bound_exact,
    is_provably_unseparated,
    separation_threshold,
)
from .lemma import LemmaOutcome, LemmaReport, check_lemma_cloud, subset_merge_range, verify_lemma1
from .packing import Packing, packing_1d_exact, packing_2d_greedy
from .predicates import (
    annulus_counts,
    is_d_eps_dense,
    is_eps_dense,
    is_eps_separated,
    neighbor_counts,
)
from .stats import (
    ConnectivityStats,
    batch_stats,
    batch_stats_of,
    is_alpha_beta_connected,
    merge_distances,
    per_batch_summary,
    sample_batches,
)

__all__ = [
    "AnnulusSpec",
    "ConnectivityStats",
    "LemmaOutcome",
    "LemmaReport",
    "Packing",
    "annulus_counts",
    "batch_size_condition",
    "batch_stats",
    "batch_stats_of",
    "check_lemma_cloud",
    "entropy_bound",
    "entropy_bound_exact",
    "is_alpha_beta_connected",
    "is_d_eps_dense",
    "is_eps_dense",
    "is_eps_separated",
    "is_provably_unseparated",
    "merge_distances",
    "neighbor_counts",
    "packing_1d_exact",
    "packing_2d_greedy",
    "per_batch_summary",
    "sample_batches",
    "separation_threshold",
    "verify_lemma1",
]
