"""
Layers shared by the connectivity MLP and the branched autoencoder.

All parameters are float64 and initialized uniformly in
``+-sqrt(1 / fan_in)`` from an explicit generator.
"""

import math
from typing import List, Optional, Sequence

import torch
from torch import nn

DTYPE = torch.float64


def init_uniform_(tensor: torch.Tensor, fan_in: int, generator: torch.Generator) -> torch.Tensor:
    bound = math.sqrt(1.0 / fan_in)
    with torch.no_grad():
        return tensor.uniform_(-bound, bound, generator=generator)


def make_linear(in_features: int, out_features: int, generator: torch.Generator) -> nn.Linear:
    layer = nn.Linear(in_features, out_features, dtype=DTYPE)
    init_uniform_(layer.weight, in_features, generator)
    init_uniform_(layer.bias, in_features, generator)
    return layer


def make_mlp(
    widths: Sequence[int],
    negative_slope: float,
    generator: torch.Generator,
    final_activation: bool = False,
) -> nn.Sequential:
    """Linear layers through ``widths`` with leaky ReLU after each but (optionally) the last."""
    layers: List[nn.Module] = []
    for k, (fan_in, fan_out) in enumerate(zip(widths[:-1], widths[1:])):
        layers.append(make_linear(fan_in, fan_out, generator))
        if final_activation or k < len(widths) - 2:
            layers.append(nn.LeakyReLU(negative_slope))
    return nn.Sequential(*layers)


class BlockDiagonalLinear(nn.Module):
    """
    Independent linear maps per branch.

    Input of width ``branches * in_features`` is split into ``branches``
    slices; slice ``j`` is mapped to output coordinates
    ``[out_features * j, out_features * (j + 1))``. Only the diagonal
    blocks exist as parameters.
    """

    def __init__(
        self,
        branches: int,
        in_features: int,
        out_features: int,
        generator: Optional[torch.Generator] = None,
    ):
        super().__init__()
        self.branches = branches
        self.in_features = in_features
        self.out_features = out_features
        self.weight = nn.Parameter(torch.empty(branches, in_features, out_features, dtype=DTYPE))
        self.bias = nn.Parameter(torch.empty(branches, out_features, dtype=DTYPE))
        generator = generator if generator is not None else torch.Generator().manual_seed(0)
        init_uniform_(self.weight, in_features, generator)
        init_uniform_(self.bias, in_features, generator)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        blocks = x.reshape(x.shape[0], self.branches, self.in_features)
        out = torch.einsum("nbp,bpd->nbd", blocks, self.weight) + self.bias
        return out.reshape(x.shape[0], self.branches * self.out_features)

    def dense_weight(self) -> torch.Tensor:
        """Full ``(B * D, B * P)`` weight matrix, zero outside the blocks."""
        return torch.block_diag(*(block.T for block in self.weight))


def slice_branch(z: torch.Tensor, j: int, branch_dim: int) -> torch.Tensor:
    """Latent coordinates of branch ``j`` (0-based)."""
    return z[:, branch_dim * j: branch_dim * (j + 1)]
