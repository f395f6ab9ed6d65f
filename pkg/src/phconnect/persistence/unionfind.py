"""
Union-find persistence engine.
"""

from typing import List

from ..filtration import FilteredComplex
from .models import Barcode, MergeEvent


class UnionFind:
    """Disjoint sets over ``0..size-1`` with union by rank and path compression.

    Every root also tracks the oldest (smallest) vertex of its set.
    """

    def __init__(self, size: int):
        self.parent: List[int] = list(range(size))
        self.rank: List[int] = [0] * size
        self.oldest: List[int] = list(range(size))

    def find(self, k: int) -> int:
        root = k
        while root != self.parent[root]:
            root = self.parent[root]
        # Path compression
        while k != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a: int, b: int) -> int:
        """Merge the sets of roots ``a`` and ``b``; returns the new root."""
        if self.rank[a] < self.rank[b]:
            a, b = b, a
        self.parent[b] = a
        if self.rank[a] == self.rank[b]:
            self.rank[a] += 1
        self.oldest[a] = min(self.oldest[a], self.oldest[b])
        return a


def persistence_unionfind(complex_: FilteredComplex) -> Barcode:
    """Process edges in filtration order; every edge joining two roots is a merge."""
    forest = UnionFind(complex_.vertex_count)
    events: List[MergeEvent] = []
    for edge in complex_.edges:
        root_i = forest.find(edge.i)
        root_j = forest.find(edge.j)
        if root_i == root_j:
            continue
        killed = max(forest.oldest[root_i], forest.oldest[root_j])
        events.append(MergeEvent(eps=edge.eps, edge=edge.edge, killed_vertex=killed))
        forest.union(root_i, root_j)
        if len(events) == complex_.vertex_count - 1:
            break
    return Barcode(events=tuple(events), vertex_count=complex_.vertex_count)
