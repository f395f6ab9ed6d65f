"""
Data models for point clouds and their pairwise distances.
"""

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from ..exceptions import InvalidInputError

DEFAULT_TIE_TOLERANCE = 1e-12

ArrayLike = Union[npt.ArrayLike, Sequence[Sequence[float]]]


class Norm(str, enum.Enum):
    """Supported p-norms."""
    L1 = "l1"
    L2 = "l2"


class Edge(NamedTuple):
    """Unordered index pair stored with ``i < j``."""
    i: int
    j: int

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        return cls(a, b) if a < b else cls(b, a)


@dataclass(frozen=True)
class PointCloud:
    """
    Ordered finite set of ``b`` points in R^n with a chosen p-norm.

    Point ``i`` keeps index ``i`` through every operation. The coordinate
    array is stored as a read-only float64 ``(b, n)`` array.
    """

    points: np.ndarray
    norm: Norm = Norm.L1

    def __post_init__(self) -> None:
        try:
            array = np.array(self.points, dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise InvalidInputError(f"Points must share one dimension: {e}") from e
        if array.ndim == 1 and array.size > 0:
            # a flat list of scalars is a cloud of 1-D points
            array = array.reshape(-1, 1)
        if array.ndim != 2:
            raise InvalidInputError(
                f"Points must form a (b, n) array, got shape {array.shape}"
            )
        if array.shape[0] < 1:
            raise InvalidInputError("A point cloud needs at least one point")
        if array.shape[1] < 1:
            raise InvalidInputError("Points must have dimension n >= 1")
        if not np.all(np.isfinite(array)):
            raise InvalidInputError("Point coordinates must be finite")
        array.setflags(write=False)
        object.__setattr__(self, "points", array)
        object.__setattr__(self, "norm", Norm(self.norm))

    @classmethod
    def from_points(cls, points: ArrayLike, norm: Union[Norm, str] = Norm.L1) -> "PointCloud":
        """Build a cloud from nested sequences; a flat sequence is read as 1-D points."""
        return cls(points, Norm(norm))  # type: ignore[arg-type]

    @property
    def size(self) -> int:
        """Number of points ``b``."""
        return int(self.points.shape[0])

    @property
    def dimension(self) -> int:
        """Ambient dimension ``n``."""
        return int(self.points.shape[1])

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """Symmetric ``(b, b)`` matrix of pairwise distances."""
        diff = self.points[:, None, :] - self.points[None, :, :]
        if self.norm is Norm.L1:
            matrix = np.abs(diff).sum(axis=2)
        else:
            matrix = np.sqrt((diff * diff).sum(axis=2))
        matrix.setflags(write=False)
        return matrix

    def distance(self, i: int, j: int) -> float:
        return float(self.distance_matrix[i, j])

    def with_points(self, points: ArrayLike) -> "PointCloud":
        """New cloud with the same norm and replaced coordinates."""
        return PointCloud(np.asarray(points, dtype=np.float64), self.norm)

    def subset(self, indices: Sequence[int]) -> "PointCloud":
        return PointCloud(self.points[list(indices)], self.norm)

    def scaled(self, factor: float) -> "PointCloud":
        return PointCloud(self.points * factor, self.norm)


@dataclass(frozen=True)
class DistanceSequence:
    """
    Strictly increasing distinct pairwise-distance values and, per value,
    the index pairs realizing it.
    """

    values: np.ndarray
    pairs_by_value: Tuple[Tuple[Edge, ...], ...]

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def pair_count(self) -> int:
        return sum(len(pairs) for pairs in self.pairs_by_value)

    def gaps(self) -> np.ndarray:
        """Differences between consecutive distance values."""
        return np.diff(self.values)


@dataclass(frozen=True)
class UniquenessReport:
    """Outcome of a distance-uniqueness check."""

    unique: bool
    tolerance: float
    collisions: Tuple[Tuple[Edge, ...], ...] = field(default_factory=tuple)

    @property
    def colliding_pairs(self) -> frozenset:
        """Every pair taking part in at least one collision."""
        return frozenset(pair for group in self.collisions for pair in group)

    def __bool__(self) -> bool:
        return self.unique
