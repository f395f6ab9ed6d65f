"""
Points, norms and pairwise distances.
"""

from .distances import (
    distances_unique,
    min_distance_gap,
    pair_distances,
    pairwise_distances,
)
from .models import (
    DEFAULT_TIE_TOLERANCE,
    DistanceSequence,
    Edge,
    Norm,
    PointCloud,
    UniquenessReport,
)

__all__ = [
    "DEFAULT_TIE_TOLERANCE",
    "DistanceSequence",
    "Edge",
    "Norm",
    "PointCloud",
    "UniquenessReport",
    "distances_unique",
    "min_distance_gap",
    "pair_distances",
    "pairwise_distances",
]
