"""
Data models for 0-dimensional persistence.
"""

import enum
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..geometry import Edge


class Engine(str, enum.Enum):
    """Persistence engines that produce identical barcodes."""
    UNIONFIND = "unionfind"
    STANDARD = "standard"
    PARALLEL = "parallel"


@dataclass(frozen=True)
class MergeEvent:
    """
    Two components merging at distance ``eps`` through ``edge``.

    ``killed_vertex`` is the vertex row paired with the edge column: the
    younger of the two components' oldest vertices.
    """

    eps: float
    edge: Edge
    killed_vertex: int

    @property
    def death(self) -> float:
        return self.eps / 2.0

    @property
    def barcode_tuple(self) -> Tuple[float, float]:
        return (0.0, self.eps / 2.0)


@dataclass(frozen=True)
class Barcode:
    """Finite merge events in ascending ``eps`` plus the essential class count."""

    events: Tuple[MergeEvent, ...]
    vertex_count: int

    def __len__(self) -> int:
        return len(self.events)

    @property
    def essential_count(self) -> int:
        return 1 if self.vertex_count >= 1 else 0

    def deaths(self) -> np.ndarray:
        """Death radii ``eps / 2`` in event order."""
        return np.asarray([event.eps for event in self.events], dtype=np.float64) / 2.0

    def total_persistence(self, p: float = 1.0) -> float:
        """l_p norm of the finite bar lengths."""
        if not self.events:
            return 0.0
        return float(np.linalg.norm(self.deaths(), ord=p))

    def pairing(self) -> List[Tuple[int, Edge]]:
        """``(killed_vertex, edge)`` pairs in event order."""
        return [(event.killed_vertex, event.edge) for event in self.events]


class ReductionStats(BaseModel):
    """Work counters of one matrix reduction."""

    model_config = ConfigDict(frozen=True)

    engine: Engine
    iterations: int = Field(default=0, ge=0)
    additions: int = Field(default=0, ge=0)
