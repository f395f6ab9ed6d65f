"""
Data models for networks and training runs.
"""

from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..geometry.models import Norm


def _check_widths(widths: List[int]) -> List[int]:
    if len(widths) < 2:
        raise ValueError("At least two layer widths are required")
    if any(width < 1 for width in widths):
        raise ValueError(f"Layer widths must be positive, got {widths}")
    return widths


class MlpSpec(BaseModel):
    """Plain MLP ``widths[0] -> ... -> widths[-1]`` with leaky ReLU between layers."""

    model_config = ConfigDict(extra="forbid")

    layer_widths: List[int] = Field(default_factory=lambda: [2, 20, 20, 2])
    negative_slope: float = Field(default=0.01, ge=0.0, description="Leaky ReLU slope")
    seed: int = Field(default=0, ge=0, description="Initialization seed")

    @field_validator("layer_widths")
    @classmethod
    def validate_widths(cls, v: List[int]) -> List[int]:
        return _check_widths(v)


class AutoencoderSpec(BaseModel):
    """
    Branched autoencoder layout.

    The encoder maps ``encoder_widths[0]`` inputs to a pre-latent vector of
    width ``encoder_widths[-1]``, split evenly across ``branches``. A
    block-diagonal head maps each slice to ``branch_dim`` latent
    coordinates; the decoder mirrors the encoder.
    """

    model_config = ConfigDict(extra="forbid")

    encoder_widths: List[int] = Field(default_factory=lambda: [2, 16, 16])
    branches: int = Field(default=1, ge=1)
    branch_dim: int = Field(default=2, ge=1)
    negative_slope: float = Field(default=0.01, ge=0.0)
    seed: int = Field(default=0, ge=0)

    @field_validator("encoder_widths")
    @classmethod
    def validate_widths(cls, v: List[int]) -> List[int]:
        return _check_widths(v)

    @model_validator(mode="after")
    def check_branch_split(self) -> "AutoencoderSpec":
        if self.encoder_widths[-1] % self.branches != 0:
            raise ValueError(
                f"Pre-latent width {self.encoder_widths[-1]} is not divisible "
                f"by {self.branches} branches"
            )
        return self

    @property
    def input_dim(self) -> int:
        return self.encoder_widths[0]

    @property
    def branch_input_dim(self) -> int:
        return self.encoder_widths[-1] // self.branches

    @property
    def latent_dim(self) -> int:
        return self.branches * self.branch_dim

    @property
    def decoder_widths(self) -> List[int]:
        return [self.latent_dim] + list(reversed(self.encoder_widths[:-1]))


class TrainConfig(BaseModel):
    """Hyperparameters of one training run."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    eta: float = Field(default=2.0, gt=0.0, description="Connectivity target")
    connectivity_weight: float = Field(
        default=1.0, ge=0.0, alias="lambda", description="Weight of the connectivity term"
    )
    batch_size: int = Field(default=100, ge=2)
    epochs: int = Field(default=50, ge=0)
    learning_rate: float = Field(default=1e-3, gt=0.0)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    adam_eps: float = Field(default=1e-8, gt=0.0)
    norm: Norm = Norm.L1
    use_reconstruction: bool = Field(
        default=True, description="Include the L1 reconstruction term"
    )
    seed: int = Field(default=0, ge=0, description="Shuffling seed")
