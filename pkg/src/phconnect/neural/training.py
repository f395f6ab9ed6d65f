"""
Joint objective and training loop.

The objective is the mean L1 reconstruction error plus ``lambda`` times the
sum over branches of the connectivity loss of that branch's latent batch.
Only the encoder sees the connectivity gradient; the decoder reads nothing
but the latent points.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import structlog
import torch
from pydantic import BaseModel

from ..exceptions import InvalidInputError
from .autoencoder import BranchedAutoencoder, ConnectivityMlp
from .layers import DTYPE, slice_branch
from .losses import connectivity_loss, reconstruction_loss
from .models import TrainConfig

logger = structlog.get_logger(__name__)

Network = Union[BranchedAutoencoder, ConnectivityMlp]
EpochCallback = Callable[[int, Network], None]

CURVE_COLUMNS = ["epoch", "iteration", "reconstruction", "connectivity", "total"]


class LossBreakdown(BaseModel):
    reconstruction: float
    connectivity: float
    total: float


@dataclass
class CombinedGradients:
    """Parameter gradients of the joint objective on one batch."""

    gradients: Dict[str, torch.Tensor]
    breakdown: LossBreakdown


@dataclass
class TrainResult:
    model: Network
    curves: pd.DataFrame
    records: List[Dict[str, float]] = field(default_factory=list)


def as_tensor(batch: Union[np.ndarray, torch.Tensor]) -> torch.Tensor:
    return torch.as_tensor(np.asarray(batch, dtype=np.float64), dtype=DTYPE)


def objective(
    model: Network, batch: torch.Tensor, config: TrainConfig
) -> Tuple[torch.Tensor, LossBreakdown]:
    """
    Joint loss on one batch.

    Returns:
        Tuple of ``(total tensor, LossBreakdown)``
    """
    weight = config.connectivity_weight
    if weight > 0 and batch.shape[0] < 2:
        raise InvalidInputError("The connectivity term needs a batch of at least two points")

    if isinstance(model, BranchedAutoencoder):
        x_hat, z = model(batch)
        reconstruction = (
            reconstruction_loss(batch, x_hat)
            if config.use_reconstruction
            else torch.zeros((), dtype=DTYPE)
        )
    else:
        z = model(batch)
        reconstruction = torch.zeros((), dtype=DTYPE)

    connectivity = torch.zeros((), dtype=DTYPE)
    if weight > 0:
        for j in range(model.branches):
            branch = slice_branch(z, j, model.branch_dim)
            connectivity = connectivity + connectivity_loss(branch, config.eta, config.norm)

    total = reconstruction + weight * connectivity
    breakdown = LossBreakdown(
        reconstruction=float(reconstruction.detach()),
        connectivity=float(connectivity.detach()),
        total=float(total.detach()),
    )
    return total, breakdown


def backward_combined(
    model: Network, batch: Union[np.ndarray, torch.Tensor], config: TrainConfig
) -> CombinedGradients:
    """Gradients of the joint objective with respect to every parameter."""
    batch = as_tensor(batch)
    if batch.shape[0] != config.batch_size:
        raise InvalidInputError(
            f"Batch has {batch.shape[0]} samples, config expects {config.batch_size}"
        )
    model.zero_grad(set_to_none=False)
    total, breakdown = objective(model, batch, config)
    if total.requires_grad:
        total.backward()
    gradients = {
        name: (param.grad.detach().clone() if param.grad is not None else torch.zeros_like(param))
        for name, param in model.named_parameters()
    }
    return CombinedGradients(gradients=gradients, breakdown=breakdown)


def iterate_batches(size: int, batch_size: int, rng: np.random.Generator) -> List[np.ndarray]:
    """Shuffled index batches of one epoch; the partial last batch is dropped."""
    order = rng.permutation(size)
    full = size // batch_size
    return [order[k * batch_size: (k + 1) * batch_size] for k in range(full)]


def train(
    model: Network,
    data: Union[np.ndarray, torch.Tensor],
    config: TrainConfig,
    callbacks: Optional[Sequence[EpochCallback]] = None,
) -> TrainResult:
    """
    Train ``model`` with Adam on ``data``.

    Callbacks are called with ``(0, model)`` before the first epoch and with
    ``(epoch, model)`` after each completed epoch.
    """
    inputs = as_tensor(data)
    if inputs.ndim != 2 or inputs.shape[0] == 0:
        raise InvalidInputError("Training data must be a nonempty (N, d) array")
    callbacks = list(callbacks or [])

    optimizer = torch.optim.Adam(
        model.parameters(),
        lr=config.learning_rate,
        betas=(config.beta1, config.beta2),
        eps=config.adam_eps,
    )
    rng = np.random.default_rng(config.seed)
    records: List[Dict[str, float]] = []

    for callback in callbacks:
        callback(0, model)

    iteration = 0
    for epoch in range(1, config.epochs + 1):
        for indices in iterate_batches(inputs.shape[0], config.batch_size, rng):
            batch = inputs[torch.as_tensor(indices)]
            optimizer.zero_grad()
            total, breakdown = objective(model, batch, config)
            if total.requires_grad:
                total.backward()
                optimizer.step()
            iteration += 1
            records.append(
                {
                    "epoch": epoch,
                    "iteration": iteration,
                    "reconstruction": breakdown.reconstruction,
                    "connectivity": breakdown.connectivity,
                    "total": breakdown.total,
                }
            )
        logger.debug("epoch_finished", epoch=epoch, iterations=iteration)
        for callback in callbacks:
            callback(epoch, model)

    logger.info("training_finished", epochs=config.epochs, iterations=iteration)
    curves = pd.DataFrame(records, columns=CURVE_COLUMNS)
    return TrainResult(model=model, curves=curves, records=records)


@torch.no_grad()
def encode_array(model: Network, data: Union[np.ndarray, torch.Tensor]) -> np.ndarray:
    """Latent points of ``data`` as a float64 array."""
    return model.encode(as_tensor(data)).numpy().copy()
