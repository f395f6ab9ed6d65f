"""
Pairwise-distance computation and uniqueness diagnostics.
"""

from typing import List, Tuple

import numpy as np

from .models import DEFAULT_TIE_TOLERANCE, DistanceSequence, Edge, PointCloud, UniquenessReport


def pair_distances(cloud: PointCloud) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    All unordered pairs ``i < j`` with their distances in filtration order.

    Pairs are sorted ascending by distance; equal distances keep the
    lexicographic ``(i, j)`` order.

    Returns:
        Tuple ``(rows, cols, distances)`` of equally long arrays
    """
    b = cloud.size
    rows, cols = np.triu_indices(b, k=1)
    distances = cloud.distance_matrix[rows, cols]
    # triu_indices is already lexicographic, a stable sort keeps that on ties
    order = np.argsort(distances, kind="stable")
    return rows[order], cols[order], distances[order]


def pairwise_distances(cloud: PointCloud) -> DistanceSequence:
    """
    Distinct pairwise-distance values sorted ascending with their realizing pairs.

    A cloud with fewer than two points yields an empty sequence.
    """
    if cloud.size < 2:
        return DistanceSequence(values=np.empty(0, dtype=np.float64), pairs_by_value=())

    rows, cols, distances = pair_distances(cloud)
    values: List[float] = []
    groups: List[List[Edge]] = []
    for i, j, d in zip(rows.tolist(), cols.tolist(), distances.tolist()):
        if values and d == values[-1]:
            groups[-1].append(Edge(i, j))
        else:
            values.append(d)
            groups.append([Edge(i, j)])

    return DistanceSequence(
        values=np.asarray(values, dtype=np.float64),
        pairs_by_value=tuple(tuple(group) for group in groups),
    )


def distances_unique(
    cloud: PointCloud, tolerance: float = DEFAULT_TIE_TOLERANCE
) -> UniquenessReport:
    """
    Check whether all pairwise distances are distinct up to ``tolerance``.

    Pairs whose sorted distances form a chain of neighbours closer than
    ``tolerance`` are reported together as one collision group.
    """
    if tolerance < 0:
        tolerance = 0.0
    if cloud.size < 3:
        return UniquenessReport(unique=True, tolerance=tolerance)

    rows, cols, distances = pair_distances(cloud)
    collisions: List[Tuple[Edge, ...]] = []
    current: List[Edge] = [Edge(int(rows[0]), int(cols[0]))]
    for k in range(1, distances.shape[0]):
        edge = Edge(int(rows[k]), int(cols[k]))
        if distances[k] - distances[k - 1] <= tolerance:
            current.append(edge)
        else:
            if len(current) > 1:
                collisions.append(tuple(current))
            current = [edge]
    if len(current) > 1:
        collisions.append(tuple(current))

    return UniquenessReport(
        unique=not collisions, tolerance=tolerance, collisions=tuple(collisions)
    )


def min_distance_gap(cloud: PointCloud) -> float:
    """
    Smallest gap between consecutive distinct distance values.

    This is the radius below which moving one coordinate cannot reorder the
    filtration. Zero when distances tie; infinity with fewer than two values.
    """
    if cloud.size < 2:
        return float("inf")
    _, _, distances = pair_distances(cloud)
    if distances.shape[0] < 2:
        return float("inf")
    return float(np.min(np.diff(distances)))
