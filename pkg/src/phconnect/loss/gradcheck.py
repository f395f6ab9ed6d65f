"""
Finite-difference checks of the connectivity gradient.
"""

from typing import Callable, Optional

import numpy as np
import structlog
from pydantic import BaseModel, Field

from ..geometry import Norm, PointCloud, min_distance_gap
from .connectivity import connectivity_grad, connectivity_loss

logger = structlog.get_logger(__name__)

DEFAULT_STEP = 1e-6
DEFAULT_MARGIN = 1e-4


def central_difference(
    func: Callable[[np.ndarray], float], x: np.ndarray, step: float = DEFAULT_STEP
) -> np.ndarray:
    """Centered-difference gradient of ``func`` at ``x`` (any shape)."""
    x0 = np.array(x, dtype=np.float64)
    grad = np.zeros_like(x0)
    flat = x0.reshape(-1)
    grad_flat = grad.reshape(-1)
    for k in range(flat.shape[0]):
        original = flat[k]
        flat[k] = original + step
        fplus = func(x0)
        flat[k] = original - step
        fminus = func(x0)
        flat[k] = original
        grad_flat[k] = (fplus - fminus) / (2 * step)
    return grad


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """``max|g - fd| / max(max|fd|, 1e-8)``."""
    scale = max(float(np.max(np.abs(numeric))) if numeric.size else 0.0, 1e-8)
    return float(np.max(np.abs(analytic - numeric))) / scale if analytic.size else 0.0


def near_kink(cloud: PointCloud, eta: float, margin: float = DEFAULT_MARGIN) -> bool:
    """
    Whether the loss may be non-smooth within ``margin`` of ``cloud``.

    True if a merge distance is within ``margin`` of ``eta``, two distances
    are within ``margin`` of each other, or (L1) a merge edge has a
    coordinate difference within ``margin`` of zero.
    """
    if min_distance_gap(cloud) < margin:
        return True
    result = connectivity_loss(cloud, eta)
    for eps, edge, _ in result.per_event:
        if abs(eps - eta) < margin:
            return True
        if cloud.norm is Norm.L1:
            diff = cloud.points[edge.i] - cloud.points[edge.j]
            if np.min(np.abs(diff)) < margin:
                return True
    return False


def check_cloud(cloud: PointCloud, eta: float, step: float = DEFAULT_STEP) -> float:
    """Relative error between the analytic and the finite-difference gradient."""
    analytic = connectivity_grad(cloud, eta)
    numeric = central_difference(
        lambda points: connectivity_loss(cloud.with_points(points), eta).value,
        cloud.points,
        step,
    )
    return relative_error(analytic, numeric)


class GradCheckReport(BaseModel):
    """Outcome of a randomized gradient check."""

    trials: int = Field(ge=0)
    checked: int = Field(ge=0)
    skipped: int = Field(ge=0)
    max_relative_error: float = Field(ge=0.0)
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_relative_error <= self.tolerance


def grad_check_harness(
    trials: int,
    norm: Norm = Norm.L2,
    eta: float = 2.0,
    max_points: int = 16,
    max_dimension: int = 8,
    seed: int = 0,
    step: float = DEFAULT_STEP,
    margin: float = DEFAULT_MARGIN,
    tolerance: float = 1e-5,
    rng: Optional[np.random.Generator] = None,
) -> GradCheckReport:
    """
    Compare analytic and finite-difference gradients on random clouds.

    Clouds of ``2..max_points`` standard-normal points in ``1..max_dimension``
    dimensions are drawn; clouds within ``margin`` of a kink are skipped.
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    checked = 0
    skipped = 0
    worst = 0.0
    for _ in range(trials):
        b = int(rng.integers(2, max_points + 1))
        n = int(rng.integers(1, max_dimension + 1))
        cloud = PointCloud(rng.standard_normal((b, n)), norm)
        if near_kink(cloud, eta, margin):
            skipped += 1
            continue
        worst = max(worst, check_cloud(cloud, eta, step))
        checked += 1

    if skipped:
        logger.warning("grad_check_trials_skipped", skipped=skipped, trials=trials)
    logger.info("grad_check_finished", checked=checked, max_relative_error=worst)
    return GradCheckReport(
        trials=trials,
        checked=checked,
        skipped=skipped,
        max_relative_error=worst,
        tolerance=tolerance,
    )
