"""
Exhaustive check of the annulus-neighbor lemma on small random clouds.

If every ``b``-subset of a set ``M`` of ``m`` points merges within
``[alpha, beta]``, then every point of ``M`` has at least ``m - b + 1``
other points at distance in ``[alpha, beta]``. The check enumerates all
``C(m, b)`` subsets, so its size is guarded.
"""

import itertools
import math
from typing import Callable, List, Optional, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, Field

from ..exceptions import CombinatorialGuardError, InvalidInputError
from ..geometry import Norm, PointCloud
from .predicates import annulus_counts
from .stats import merge_distances

logger = structlog.get_logger(__name__)

MAX_SUBSETS = 10**6

CloudFactory = Callable[[np.random.Generator], PointCloud]


class LemmaOutcome(BaseModel):
    """Result of checking one cloud."""

    premise: bool
    violations: int = Field(ge=0)
    alpha: float
    beta: float
    min_annulus_count: int


class LemmaReport(BaseModel):
    """Aggregate over all trials."""

    m: int
    b: int
    n: int
    trials: int
    subsets_per_trial: int
    premise_hits: int = 0
    violations: int = 0
    measured_radii: bool = True

    @property
    def hit_rate(self) -> float:
        return self.premise_hits / self.trials if self.trials else 0.0


def _check_sizes(m: int, b: int) -> int:
    if not 2 <= b <= m:
        raise InvalidInputError(f"Need 2 <= b <= m, got b={b}, m={m}")
    subsets = math.comb(m, b)
    if subsets > MAX_SUBSETS:
        raise CombinatorialGuardError(
            f"C({m}, {b}) = {subsets} subsets exceeds the enumeration limit of {MAX_SUBSETS}"
        )
    return subsets


def subset_merge_range(
    cloud: PointCloud, b: int
) -> Tuple[float, float, List[Tuple[float, float]]]:
    """
    Merge-distance range of every ``b``-subset of ``cloud``.

    Returns:
        Overall ``(alpha, beta)`` and the per-subset ``(min, max)`` list
    """
    ranges = []
    for subset in itertools.combinations(range(cloud.size), b):
        distances = merge_distances(cloud.subset(subset))
        ranges.append((float(distances.min()), float(distances.max())))
    alpha = min(low for low, _ in ranges)
    beta = max(high for _, high in ranges)
    return alpha, beta, ranges


def check_lemma_cloud(
    cloud: PointCloud,
    b: int,
    alpha: Optional[float] = None,
    beta: Optional[float] = None,
) -> LemmaOutcome:
    """
    Check premise and conclusion on one cloud.

    Without ``alpha``/``beta`` the extremal merge distances over all subsets
    are used, which always satisfies the premise.
    """
    _check_sizes(cloud.size, b)
    measured_alpha, measured_beta, ranges = subset_merge_range(cloud, b)
    alpha = measured_alpha if alpha is None else alpha
    beta = measured_beta if beta is None else beta
    premise = all(alpha <= low and high <= beta for low, high in ranges)

    counts = annulus_counts(cloud, alpha, beta)
    required = cloud.size - b + 1
    violations = int(np.sum(counts < required)) if premise else 0
    return LemmaOutcome(
        premise=premise,
        violations=violations,
        alpha=alpha,
        beta=beta,
        min_annulus_count=int(counts.min()),
    )


def verify_lemma1(
    m: int,
    b: int,
    n: int,
    trials: int,
    seed: int = 0,
    alpha: Optional[float] = None,
    beta: Optional[float] = None,
    norm: Norm = Norm.L1,
    cloud_factory: Optional[CloudFactory] = None,
) -> LemmaReport:
    """
    Run the exhaustive lemma check on ``trials`` random clouds of ``m`` points.

    Args:
        m: Cloud size
        b: Subset size
        n: Ambient dimension of the default standard-normal clouds
        trials: Number of clouds
        seed: Root seed; trial ``k`` uses the ``k``-th spawned child seed
        alpha: Fixed inner radius instead of the measured one
        beta: Fixed outer radius instead of the measured one
        norm: Norm of the default clouds
        cloud_factory: Alternative cloud generator taking the trial generator

    Raises:
        CombinatorialGuardError: If ``C(m, b)`` exceeds the enumeration limit
    """
    subsets = _check_sizes(m, b)
    report = LemmaReport(
        m=m,
        b=b,
        n=n,
        trials=trials,
        subsets_per_trial=subsets,
        measured_radii=alpha is None and beta is None,
    )
    for child in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.default_rng(child)
        if cloud_factory is not None:
            cloud = cloud_factory(rng)
        else:
            cloud = PointCloud(rng.standard_normal((m, n)), norm)
        outcome = check_lemma_cloud(cloud, b, alpha, beta)
        if outcome.premise:
            report.premise_hits += 1
            report.violations += outcome.violations

    if report.violations:
        logger.warning("lemma_violations_found", violations=report.violations, m=m, b=b)
    logger.info(
        "lemma_check_finished",
        trials=trials,
        premise_hits=report.premise_hits,
        violations=report.violations,
    )
    return report
