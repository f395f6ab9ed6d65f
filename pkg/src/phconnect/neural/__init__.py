"""
Networks, joint objective and training with the connectivity loss.
"""

from .autoencoder import BranchedAutoencoder, ConnectivityMlp
from .diagnostics import branch_death_statistics
from .gradcheck import near_network_kink, network_grad_check_harness, parameter_grad_error
from .layers import BlockDiagonalLinear, make_mlp, slice_branch
from .losses import (
    ConnectivityLoss,
    connectivity_loss,
    indicator_connectivity_loss,
    merge_pairs,
    reconstruction_loss,
)
from .models import AutoencoderSpec, MlpSpec, TrainConfig
from .serialization import load_model, save_model
from .toy import gaussian_mixture, toy_experiment, toy_train_config, write_toy_outputs
from .training import (
    CombinedGradients,
    LossBreakdown,
    TrainResult,
    backward_combined,
    encode_array,
    objective,
    train,
)

__all__ = [
    "AutoencoderSpec",
    "BlockDiagonalLinear",
    "BranchedAutoencoder",
    "CombinedGradients",
    "ConnectivityLoss",
    "ConnectivityMlp",
    "LossBreakdown",
    "MlpSpec",
    "TrainConfig",
    "TrainResult",
    "backward_combined",
    "branch_death_statistics",
    "connectivity_loss",
    "encode_array",
    "gaussian_mixture",
    "indicator_connectivity_loss",
    "load_model",
    "make_mlp",
    "merge_pairs",
    "near_network_kink",
    "network_grad_check_harness",
    "objective",
    "parameter_grad_error",
    "reconstruction_loss",
    "save_model",
    "slice_branch",
    "toy_experiment",
    "toy_train_config",
    "train",
    "write_toy_outputs",
]
