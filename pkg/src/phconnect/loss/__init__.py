"""
Connectivity loss on batches of latent points.
"""

from .connectivity import (
    IndicatorTable,
    LossResult,
    connectivity_grad,
    connectivity_loss,
    connectivity_loss_and_grad,
    indicator_table,
    loss_via_indicator,
)
from .gradcheck import (
    GradCheckReport,
    central_difference,
    check_cloud,
    grad_check_harness,
    near_kink,
    relative_error,
)

__all__ = [
    "GradCheckReport",
    "IndicatorTable",
    "LossResult",
    "central_difference",
    "check_cloud",
    "connectivity_grad",
    "connectivity_loss",
    "connectivity_loss_and_grad",
    "grad_check_harness",
    "indicator_table",
    "loss_via_indicator",
    "near_kink",
    "relative_error",
]
