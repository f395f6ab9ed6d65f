"""
Alpha-beta connectivity statistics over batches.
"""

from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..exceptions import InvalidInputError
from ..filtration import build_vr
from ..geometry import Norm, PointCloud
from ..persistence import persistence_unionfind


class ConnectivityStats(BaseModel):
    """Mean min / mean average / mean max merge distance over evaluation batches."""

    alpha_hat: float
    eps_hat: float
    beta_hat: float
    batch_size: int = Field(ge=2)
    batch_count: int = Field(ge=1)


def merge_distances(cloud: PointCloud) -> np.ndarray:
    """Merge distances of ``cloud`` in ascending order."""
    barcode = persistence_unionfind(build_vr(cloud))
    return np.asarray([event.eps for event in barcode.events], dtype=np.float64)


def is_alpha_beta_connected(cloud: PointCloud) -> Tuple[float, float]:
    """Smallest and largest merge distance, the tightest ``(alpha, beta)`` of ``cloud``."""
    if cloud.size < 2:
        raise InvalidInputError("alpha-beta connectivity needs at least two points")
    distances = merge_distances(cloud)
    return float(distances.min()), float(distances.max())


def batch_stats(clouds: Iterable[PointCloud]) -> ConnectivityStats:
    """
    Average the per-batch min, mean and max merge distance across batches.

    Raises:
        InvalidInputError: If no batch is given or a batch has fewer than two points
    """
    mins: List[float] = []
    means: List[float] = []
    maxes: List[float] = []
    batch_size: Optional[int] = None
    for cloud in clouds:
        if cloud.size < 2:
            raise InvalidInputError("Every batch needs at least two points")
        distances = merge_distances(cloud)
        mins.append(float(distances.min()))
        means.append(float(distances.mean()))
        maxes.append(float(distances.max()))
        if batch_size is None:
            batch_size = cloud.size
    if batch_size is None:
        raise InvalidInputError("batch_stats needs at least one batch")
    return ConnectivityStats(
        alpha_hat=float(np.mean(mins)),
        eps_hat=float(np.mean(means)),
        beta_hat=float(np.mean(maxes)),
        batch_size=batch_size,
        batch_count=len(mins),
    )


def sample_batches(
    points: np.ndarray,
    batch_size: int,
    count: int,
    rng: np.random.Generator,
    norm: Norm = Norm.L1,
) -> Iterator[PointCloud]:
    """Random batches of distinct rows of ``points``."""
    points = np.asarray(points, dtype=np.float64)
    if batch_size > points.shape[0]:
        raise InvalidInputError(
            f"Batch size {batch_size} exceeds the {points.shape[0]} available points"
        )
    for _ in range(count):
        indices = rng.choice(points.shape[0], size=batch_size, replace=False)
        yield PointCloud(points[indices], norm)


def batch_stats_of(
    points: np.ndarray,
    batch_size: int,
    count: int,
    rng: np.random.Generator,
    norm: Norm = Norm.L1,
) -> ConnectivityStats:
    """:func:`batch_stats` over ``count`` random batches drawn from ``points``."""
    return batch_stats(sample_batches(points, batch_size, count, rng, norm))


def per_batch_summary(clouds: Sequence[PointCloud]) -> np.ndarray:
    """``(K, 3)`` array of per-batch min, mean and max merge distance."""
    rows = []
    for cloud in clouds:
        distances = merge_distances(cloud)
        rows.append((distances.min(), distances.mean(), distances.max()))
    return np.asarray(rows, dtype=np.float64).reshape(-1, 3)
