"""
Finite-difference check of parameter gradients of the joint objective.
"""

from typing import Optional

import numpy as np
import structlog
import torch
from torch import nn

from ..geometry import PointCloud
from ..loss.gradcheck import (
    DEFAULT_MARGIN,
    DEFAULT_STEP,
    GradCheckReport,
    near_kink,
    relative_error,
)
from .autoencoder import BranchedAutoencoder
from .layers import slice_branch
from .models import AutoencoderSpec, TrainConfig
from .training import Network, as_tensor, backward_combined, objective

logger = structlog.get_logger(__name__)


def _min_preactivation(sequential: nn.Sequential, x: torch.Tensor) -> float:
    """Smallest magnitude of any input to a leaky ReLU."""
    smallest = float("inf")
    for layer in sequential:
        if isinstance(layer, nn.LeakyReLU):
            smallest = min(smallest, float(x.abs().min()))
        x = layer(x)
    return smallest


@torch.no_grad()
def near_network_kink(
    model: Network, batch: torch.Tensor, config: TrainConfig, margin: float = DEFAULT_MARGIN
) -> bool:
    """Whether the objective may be non-smooth within ``margin`` of the current parameters."""
    if isinstance(model, BranchedAutoencoder):
        if _min_preactivation(model.encoder, batch) < margin:
            return True
        z = model.encode(batch)
        if _min_preactivation(model.decoder, z) < margin:
            return True
        if config.use_reconstruction and float((batch - model.decoder(z)).abs().min()) < margin:
            return True
    else:
        if _min_preactivation(model.net, batch) < margin:
            return True
        z = model(batch)
    if config.connectivity_weight > 0:
        for j in range(model.branches):
            cloud = PointCloud(slice_branch(z, j, model.branch_dim).numpy(), config.norm)
            if near_kink(cloud, config.eta, margin):
                return True
    return False


def parameter_grad_error(
    model: Network,
    batch: np.ndarray,
    config: TrainConfig,
    step: float = DEFAULT_STEP,
    margin: float = DEFAULT_MARGIN,
) -> Optional[float]:
    """
    Relative error between backpropagated and finite-difference parameter gradients.

    Returns ``None`` when the batch sits within ``margin`` of a kink.
    """
    inputs = as_tensor(batch)
    if near_network_kink(model, inputs, config, margin):
        return None

    analytic = backward_combined(model, inputs, config).gradients
    analytic_flat = []
    numeric_flat = []
    with torch.no_grad():
        for name, param in model.named_parameters():
            values = param.data.view(-1)
            numeric = torch.zeros_like(values)
            for k in range(values.shape[0]):
                original = float(values[k])
                values[k] = original + step
                fplus = float(objective(model, inputs, config)[0])
                values[k] = original - step
                fminus = float(objective(model, inputs, config)[0])
                values[k] = original
                numeric[k] = (fplus - fminus) / (2 * step)
            analytic_flat.append(analytic[name].view(-1).numpy())
            numeric_flat.append(numeric.numpy())
    return relative_error(np.concatenate(analytic_flat), np.concatenate(numeric_flat))


def network_grad_check_harness(
    trials: int,
    seed: int = 0,
    batch_size: int = 4,
    eta: float = 2.0,
    connectivity_weight: float = 1.0,
    tolerance: float = 1e-4,
    step: float = DEFAULT_STEP,
    margin: float = DEFAULT_MARGIN,
) -> GradCheckReport:
    """Parameter gradient check on tiny ``[2, 3, 2]`` branched autoencoders with one branch."""
    rng = np.random.default_rng(seed)
    config = TrainConfig(
        batch_size=batch_size, eta=eta, connectivity_weight=connectivity_weight
    )
    checked = 0
    skipped = 0
    worst = 0.0
    for trial in range(trials):
        spec = AutoencoderSpec(
            encoder_widths=[2, 3, 2], branches=1, branch_dim=2, seed=seed + trial
        )
        model = BranchedAutoencoder(spec)
        batch = rng.standard_normal((batch_size, 2))
        error = parameter_grad_error(model, batch, config, step, margin)
        if error is None:
            skipped += 1
            continue
        checked += 1
        worst = max(worst, error)

    if skipped:
        logger.warning("network_grad_check_trials_skipped", skipped=skipped, trials=trials)
    logger.info("network_grad_check_finished", checked=checked, max_relative_error=worst)
    return GradCheckReport(
        trials=trials,
        checked=checked,
        skipped=skipped,
        max_relative_error=worst,
        tolerance=tolerance,
    )
