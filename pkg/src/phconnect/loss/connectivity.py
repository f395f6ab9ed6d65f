"""
Connectivity loss and its gradient with respect to the batch points.

For a batch with merge events ``(eps_t, {i_t, j_t})`` the loss is
``sum_t |eta - eps_t|``. The pairing of points is locally constant in the
batch, so only the distance factor of every merge edge carries derivative.
"""

import warnings
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

import numpy as np
import structlog

from ..exceptions import DistanceTieWarning, InvalidInputError
from ..filtration import build_vr
from ..geometry import (
    DEFAULT_TIE_TOLERANCE,
    Edge,
    Norm,
    PointCloud,
    distances_unique,
    pair_distances,
)
from ..persistence import Barcode, merge_set, persistence_unionfind

logger = structlog.get_logger(__name__)

EventContribution = Tuple[float, Edge, float]


@dataclass(frozen=True)
class LossResult:
    """Loss value, per-event contributions and (optionally) the ``(b, n)`` gradient."""

    value: float
    per_event: Tuple[EventContribution, ...]
    gradient: Optional[np.ndarray] = None


@dataclass(frozen=True)
class IndicatorTable:
    """Pairs ``{i, j}`` whose distance is a merge distance of the batch."""

    size: int
    pairs: FrozenSet[Edge]

    def bit(self, i: int, j: int) -> int:
        return int(Edge.of(i, j) in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def as_matrix(self) -> np.ndarray:
        """Symmetric boolean ``(b, b)`` matrix of the bits."""
        matrix = np.zeros((self.size, self.size), dtype=bool)
        for edge in self.pairs:
            matrix[edge.i, edge.j] = matrix[edge.j, edge.i] = True
        return matrix


def _check_inputs(cloud: PointCloud, eta: float) -> None:
    if cloud.size < 2:
        raise InvalidInputError("The connectivity loss needs at least two points")
    if not eta > 0:
        raise InvalidInputError(f"eta must be positive, got {eta}")


def _barcode(cloud: PointCloud, barcode: Optional[Barcode]) -> Barcode:
    return barcode if barcode is not None else persistence_unionfind(build_vr(cloud))


def connectivity_loss(
    cloud: PointCloud, eta: float, barcode: Optional[Barcode] = None
) -> LossResult:
    """
    Sum of ``|eta - eps|`` over the merge events of ``cloud``.

    Events are summed by ascending distance, ties by edge.

    Raises:
        InvalidInputError: If ``cloud`` has fewer than two points or ``eta <= 0``
    """
    _check_inputs(cloud, eta)
    value = 0.0
    per_event = []
    for eps, edge in merge_set(_barcode(cloud, barcode)):
        contribution = abs(eta - eps)
        value += contribution
        per_event.append((eps, edge, contribution))
    return LossResult(value=value, per_event=tuple(per_event))


def indicator_table(
    cloud: PointCloud,
    barcode: Optional[Barcode] = None,
    tolerance: float = DEFAULT_TIE_TOLERANCE,
) -> IndicatorTable:
    """
    Indicator bit per pair: set iff the pair's distance is a merge distance.

    With tied distances a value can match several pairs; the table then
    falls back to the causing edges chosen by lexicographic tie-break.
    """
    barcode = _barcode(cloud, barcode)
    report = distances_unique(cloud, tolerance)
    if not report.unique:
        message = f"{len(report.colliding_pairs)} pairs have tied distances"
        logger.warning("distance_ties_detected", pairs=len(report.colliding_pairs))
        warnings.warn(message, DistanceTieWarning, stacklevel=2)
        return IndicatorTable(cloud.size, frozenset(event.edge for event in barcode.events))

    merge_distances = {event.eps for event in barcode.events}
    rows, cols, distances = pair_distances(cloud)
    pairs = frozenset(
        Edge(i, j)
        for i, j, d in zip(rows.tolist(), cols.tolist(), distances.tolist())
        if d in merge_distances
    )
    return IndicatorTable(cloud.size, pairs)


def loss_via_indicator(
    cloud: PointCloud, eta: float, tolerance: float = DEFAULT_TIE_TOLERANCE
) -> float:
    """
    Loss as a sum over all pairs weighted by the indicator bits.

    Pairs are visited in filtration order so the sum equals
    :func:`connectivity_loss` exactly.
    """
    _check_inputs(cloud, eta)
    table = indicator_table(cloud, tolerance=tolerance)
    rows, cols, distances = pair_distances(cloud)
    value = 0.0
    for i, j, d in zip(rows.tolist(), cols.tolist(), distances.tolist()):
        if Edge(i, j) in table.pairs:
            value += abs(eta - d)
    return value


def connectivity_grad(
    cloud: PointCloud, eta: float, barcode: Optional[Barcode] = None
) -> np.ndarray:
    """
    Gradient of the connectivity loss with respect to every coordinate.

    Subgradient 0 is used where ``eps == eta`` and, for the L1 norm, where a
    coordinate difference is exactly zero.

    Returns:
        Array of shape ``(b, n)``
    """
    _check_inputs(cloud, eta)
    points = cloud.points
    gradient = np.zeros_like(points)
    for event in _barcode(cloud, barcode).events:
        outer = np.sign(event.eps - eta)
        if outer == 0:
            continue
        i, j = event.edge
        diff = points[i] - points[j]
        if cloud.norm is Norm.L1:
            inner = np.sign(diff)
        elif event.eps > 0:
            inner = diff / event.eps
        else:
            continue
        gradient[i] += outer * inner
        gradient[j] -= outer * inner
    return gradient


def connectivity_loss_and_grad(cloud: PointCloud, eta: float) -> LossResult:
    """Loss value and gradient sharing one persistence computation."""
    barcode = _barcode(cloud, None)
    result = connectivity_loss(cloud, eta, barcode)
    return LossResult(
        value=result.value,
        per_event=result.per_event,
        gradient=connectivity_grad(cloud, eta, barcode),
    )
