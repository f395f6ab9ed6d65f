"""
Torch formulations of the connectivity loss.

``ConnectivityLoss`` evaluates the loss and its exact gradient on the
detached batch and hands the gradient to autograd. ``indicator_connectivity_loss``
fixes the merge pairs from the persistence engine and sums
``|eta - |z_i - z_j||`` over them in torch, letting autograd differentiate
the distances.
"""

from typing import Any, List, Tuple, Union

import numpy as np
import torch

from ..exceptions import InvalidInputError
from ..filtration import build_vr
from ..geometry import Norm, PointCloud
from ..loss import connectivity_loss_and_grad
from ..persistence import persistence_unionfind


def _cloud(z: torch.Tensor, norm: Union[Norm, str]) -> PointCloud:
    if z.ndim != 2 or z.shape[0] < 2:
        raise InvalidInputError(
            f"The connectivity loss needs a (b, n) batch with b >= 2, got {tuple(z.shape)}"
        )
    return PointCloud(z.detach().cpu().numpy().astype(np.float64), Norm(norm))


class ConnectivityLoss(torch.autograd.Function):
    @staticmethod
    def forward(ctx: Any, z: torch.Tensor, eta: float, norm: Union[Norm, str]) -> torch.Tensor:
        result = connectivity_loss_and_grad(_cloud(z, norm), eta)
        ctx.save_for_backward(torch.as_tensor(result.gradient, dtype=z.dtype, device=z.device))
        return torch.tensor(result.value, dtype=z.dtype, device=z.device)

    @staticmethod
    def backward(ctx: Any, grad_output: torch.Tensor) -> Tuple[torch.Tensor, None, None]:
        (gradient,) = ctx.saved_tensors
        return grad_output * gradient, None, None


def connectivity_loss(
    z: torch.Tensor, eta: float, norm: Union[Norm, str] = Norm.L1
) -> torch.Tensor:
    return ConnectivityLoss.apply(z, eta, norm)


def merge_pairs(z: torch.Tensor, norm: Union[Norm, str] = Norm.L1) -> Tuple[List[int], List[int]]:
    """Endpoints of the merge edges of the batch, in filtration order."""
    barcode = persistence_unionfind(build_vr(_cloud(z, norm)))
    rows = [event.edge.i for event in barcode.events]
    cols = [event.edge.j for event in barcode.events]
    return rows, cols


def indicator_connectivity_loss(
    z: torch.Tensor, eta: float, norm: Union[Norm, str] = Norm.L1
) -> torch.Tensor:
    rows, cols = merge_pairs(z, norm)
    diff = z[rows] - z[cols]
    if Norm(norm) is Norm.L1:
        distances = diff.abs().sum(dim=1)
    else:
        distances = (diff * diff).sum(dim=1).sqrt()
    return (eta - distances).abs().sum()


def reconstruction_loss(x: torch.Tensor, x_hat: torch.Tensor) -> torch.Tensor:
    """Mean over the batch of the L1 reconstruction error."""
    return (x - x_hat).abs().sum(dim=1).mean()
