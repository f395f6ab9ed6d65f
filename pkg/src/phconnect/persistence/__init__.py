"""
0-dimensional persistent homology of Vietoris-Rips filtrations.
"""

from .barcode import barcode_from_reduction, compute_barcode, format_barcode, merge_set
from .bench import bench_reduction
from .matrix import ReductionMatrix, add_columns
from .models import Barcode, Engine, MergeEvent, ReductionStats
from .reduction import (
    ParallelReduction,
    apply_merge_plan,
    compute_merge_plan,
    reduce_parallel,
    reduce_standard,
)
from .unionfind import UnionFind, persistence_unionfind

__all__ = [
    "Barcode",
    "Engine",
    "MergeEvent",
    "ParallelReduction",
    "ReductionMatrix",
    "ReductionStats",
    "UnionFind",
    "add_columns",
    "apply_merge_plan",
    "barcode_from_reduction",
    "bench_reduction",
    "compute_barcode",
    "compute_merge_plan",
    "format_barcode",
    "merge_set",
    "persistence_unionfind",
    "reduce_parallel",
    "reduce_standard",
]
