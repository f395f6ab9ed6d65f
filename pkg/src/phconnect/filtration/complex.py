"""
Construction and queries of the 1-skeleton Vietoris-Rips filtration.

An edge ``{i, j}`` enters the filtration at radius ``r = eps / 2`` where
``eps`` is the distance between points ``i`` and ``j``; all vertices enter at
radius 0. Edges are kept in filtration order: ascending ``eps``, ties broken
lexicographically by ``(i, j)``.
"""

import json
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import numpy as np

from ..exceptions import InvalidInputError
from ..geometry import Edge, PointCloud, pair_distances


class FilteredEdge(NamedTuple):
    """Edge ``{i, j}`` (``i < j``) with its pairwise distance."""
    i: int
    j: int
    eps: float

    @property
    def edge(self) -> Edge:
        return Edge(self.i, self.j)

    @property
    def radius(self) -> float:
        return self.eps / 2.0


@dataclass(frozen=True)
class FilteredComplex:
    """Vertices and edges of a Vietoris-Rips complex in filtration order."""

    vertex_count: int
    edges: Tuple[FilteredEdge, ...]

    @property
    def filtration_radii(self) -> np.ndarray:
        """Entry radius ``eps / 2`` of every edge, in edge order."""
        return np.asarray([edge.eps for edge in self.edges], dtype=np.float64) / 2.0

    @property
    def column_count(self) -> int:
        """Number of simplices (vertices first, then edges)."""
        return self.vertex_count + len(self.edges)

    def edge_column(self, k: int) -> int:
        """Boundary-matrix column index of edge ``k``."""
        return self.vertex_count + k

    def column_edge(self, column: int) -> FilteredEdge:
        """Edge stored at boundary-matrix column ``column``."""
        if column < self.vertex_count:
            raise InvalidInputError(f"Column {column} is a vertex column")
        return self.edges[column - self.vertex_count]


def build_vr(cloud: PointCloud) -> FilteredComplex:
    """Build the filtered 1-skeleton over all ``b(b-1)/2`` pairs of ``cloud``."""
    rows, cols, distances = pair_distances(cloud)
    edges = tuple(
        FilteredEdge(i, j, eps)
        for i, j, eps in zip(rows.tolist(), cols.tolist(), distances.tolist())
    )
    return FilteredComplex(vertex_count=cloud.size, edges=edges)


def complex_at_radius(
    complex_: FilteredComplex, r: float
) -> Tuple[List[int], List[Edge]]:
    """
    Vertices and edges present at radius ``r``.

    Returns:
        Tuple of ``(vertices, edges)`` with every edge satisfying ``eps / 2 <= r``
    """
    if r < 0:
        raise InvalidInputError(f"Radius must be nonnegative, got {r}")
    vertices = list(range(complex_.vertex_count))
    edges = [edge.edge for edge in complex_.edges if edge.eps / 2.0 <= r]
    return vertices, edges


def complex_to_json(complex_: FilteredComplex) -> str:
    """Debug dump with ``vertices`` and ``edges`` (``[i, j, eps]``) in filtration order."""
    payload = {
        "vertices": list(range(complex_.vertex_count)),
        "edges": [[edge.i, edge.j, edge.eps] for edge in complex_.edges],
    }
    return json.dumps(payload)


def complex_from_json(text: str) -> FilteredComplex:
    """Inverse of :func:`complex_to_json`."""
    payload = json.loads(text)
    edges = tuple(FilteredEdge(int(i), int(j), float(eps)) for i, j, eps in payload["edges"])
    return FilteredComplex(vertex_count=len(payload["vertices"]), edges=edges)
