"""
Networks trained with the connectivity loss.
"""

from typing import Tuple

import torch
from torch import nn

from ..exceptions import InvalidInputError
from .layers import BlockDiagonalLinear, make_mlp, slice_branch
from .models import AutoencoderSpec, MlpSpec


def _check_input(x: torch.Tensor, width: int) -> None:
    if x.ndim != 2 or x.shape[1] != width:
        raise InvalidInputError(
            f"Expected inputs of shape (N, {width}), got {tuple(x.shape)}"
        )


class ConnectivityMlp(nn.Module):
    """MLP whose outputs are the latent points (single branch, no decoder)."""

    def __init__(self, spec: MlpSpec):
        super().__init__()
        self.spec = spec
        generator = torch.Generator().manual_seed(spec.seed)
        self.net = make_mlp(spec.layer_widths, spec.negative_slope, generator)

    @property
    def branches(self) -> int:
        return 1

    @property
    def branch_dim(self) -> int:
        return self.spec.layer_widths[-1]

    def encode(self, x: torch.Tensor) -> torch.Tensor:
        _check_input(x, self.spec.layer_widths[0])
        return self.net(x)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.encode(x)


class BranchedAutoencoder(nn.Module):
    """
    Encoder, block-diagonal latent head and mirrored decoder.

    Each of the ``B`` branches owns ``D`` latent coordinates and reads only
    its own slice of the pre-latent vector.
    """

    def __init__(self, spec: AutoencoderSpec):
        super().__init__()
        self.spec = spec
        generator = torch.Generator().manual_seed(spec.seed)
        self.encoder = make_mlp(
            spec.encoder_widths, spec.negative_slope, generator, final_activation=True
        )
        self.head = BlockDiagonalLinear(
            spec.branches, spec.branch_input_dim, spec.branch_dim, generator
        )
        self.decoder = make_mlp(spec.decoder_widths, spec.negative_slope, generator)

    @property
    def branches(self) -> int:
        return self.spec.branches

    @property
    def branch_dim(self) -> int:
        return self.spec.branch_dim

    def encode(self, x: torch.Tensor) -> torch.Tensor:
        _check_input(x, self.spec.input_dim)
        return self.head(self.encoder(x))

    def decode(self, z: torch.Tensor) -> torch.Tensor:
        _check_input(z, self.spec.latent_dim)
        return self.decoder(z)

    def branch(self, z: torch.Tensor, j: int) -> torch.Tensor:
        if not 0 <= j < self.branches:
            raise InvalidInputError(f"Branch {j} out of range for {self.branches} branches")
        return slice_branch(z, j, self.branch_dim)

    def forward(self, x: torch.Tensor) -> Tuple[torch.Tensor, torch.Tensor]:
        """Returns ``(reconstruction, latent)``."""
        z = self.encode(x)
        return self.decoder(z), z
