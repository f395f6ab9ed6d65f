"""
Boundary-matrix reduction engines.

``reduce_standard`` sweeps columns left to right and adds the earlier column
holding the same low until the low is unique. ``reduce_parallel`` works in
rounds: it computes the merge plan of the current matrix (for every group
of nonzero columns sharing a low, add the leftmost column to all others),
applies every addition of the plan, and stops once the plan is empty.
Within one plan no column is both origin and target and every target
appears once, so a round's additions are independent of each other.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import structlog

from .matrix import ReductionMatrix, add_columns
from .models import Engine, ReductionStats

logger = structlog.get_logger(__name__)

MergePlan = List[Tuple[int, int]]


@dataclass
class ParallelReduction:
    matrix: ReductionMatrix
    iterations: int
    additions: int

    @property
    def stats(self) -> ReductionStats:
        return ReductionStats(
            engine=Engine.PARALLEL, iterations=self.iterations, additions=self.additions
        )


def reduce_standard(matrix: ReductionMatrix) -> ReductionMatrix:
    """Reduce a copy of ``matrix`` column by column."""
    reduced = matrix.copy()
    pivot_of_low: Dict[int, int] = {}
    additions = 0
    for j in range(len(reduced)):
        low = reduced.low(j)
        while low >= 0 and low in pivot_of_low:
            reduced.add_column(j, pivot_of_low[low])
            additions += 1
            low = reduced.low(j)
        if low >= 0:
            pivot_of_low[low] = j
    logger.debug("standard_reduction_finished", columns=len(reduced), additions=additions)
    return reduced


def compute_merge_plan(matrix: ReductionMatrix) -> MergePlan:
    """
    ``(origin, target)`` additions for the current state of ``matrix``.

    Nonzero columns are grouped by low; in each group of two or more the
    smallest column is the origin for all the others.
    """
    groups: Dict[int, List[int]] = {}
    for j, low in enumerate(matrix.lows()):
        if low >= 0:
            groups.setdefault(low, []).append(j)
    plan: MergePlan = []
    for columns in groups.values():
        if len(columns) < 2:
            continue
        origin = columns[0]
        plan.extend((origin, target) for target in columns[1:])
    plan.sort(key=lambda pair: pair[1])
    return plan


def apply_merge_plan(
    matrix: ReductionMatrix,
    plan: MergePlan,
    executor: Optional[ThreadPoolExecutor] = None,
) -> None:
    """Apply every addition of ``plan`` against the pre-round state of ``matrix``."""
    snapshot = matrix.columns
    if executor is None:
        sums = [add_columns(snapshot[target], snapshot[origin]) for origin, target in plan]
    else:
        sums = list(
            executor.map(
                lambda pair: add_columns(snapshot[pair[1]], snapshot[pair[0]]), plan
            )
        )
    for (_, target), column in zip(plan, sums):
        matrix.columns[target] = column


def reduce_parallel(matrix: ReductionMatrix, threads: int = 1) -> ParallelReduction:
    """
    Reduce a copy of ``matrix`` in independent rounds of column additions.

    Args:
        matrix: Boundary matrix in filtration order
        threads: Worker threads for the additions of one round; 1 runs them inline

    Returns:
        Reduced matrix with the number of rounds and additions performed
    """
    reduced = matrix.copy()
    iterations = 0
    additions = 0
    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while True:
            plan = compute_merge_plan(reduced)
            if not plan:
                break
            apply_merge_plan(reduced, plan, executor)
            iterations += 1
            additions += len(plan)
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    logger.debug(
        "parallel_reduction_finished",
        columns=len(reduced),
        iterations=iterations,
        additions=additions,
        threads=threads,
    )
    return ParallelReduction(matrix=reduced, iterations=iterations, additions=additions)
