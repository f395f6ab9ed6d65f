"""
Density and separation predicates on point clouds.

All neighborhoods are closed: a point at exactly the radius counts.
"""

import numpy as np

from ..exceptions import InvalidInputError
from ..geometry import PointCloud


def neighbor_counts(cloud: PointCloud, radius: float) -> np.ndarray:
    """Number of other points within ``radius`` of every point."""
    within = cloud.distance_matrix <= radius
    np.fill_diagonal(within, False)
    return within.sum(axis=1)


def annulus_counts(cloud: PointCloud, alpha: float, beta: float) -> np.ndarray:
    """Number of other points ``y`` with ``alpha <= |z - y| <= beta`` for every ``z``."""
    distances = cloud.distance_matrix
    inside = (distances >= alpha) & (distances <= beta)
    np.fill_diagonal(inside, False)
    return inside.sum(axis=1)


def is_d_eps_dense(cloud: PointCloud, d: int, eps: float) -> bool:
    """Every point has at least ``d`` other points within ``eps``."""
    if d < 1:
        raise InvalidInputError(f"d must be a positive integer, got {d}")
    return bool(np.all(neighbor_counts(cloud, eps) >= d))


def is_eps_dense(cloud: PointCloud, eps: float) -> bool:
    return is_d_eps_dense(cloud, 1, eps)


def is_eps_separated(cloud: PointCloud, eps: float) -> bool:
    """All pairwise distances are at least ``eps``."""
    if cloud.size < 2:
        return True
    rows, cols = np.triu_indices(cloud.size, k=1)
    return bool(np.all(cloud.distance_matrix[rows, cols] >= eps))
