"""
Count-based one-class model over branched latent codes.

A query scores one point for every stored training code, per branch, that
lies within distance ``eta`` of the query's code in that branch.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
import torch

from ..exceptions import InvalidInputError
from ..geometry import Norm
from ..neural.training import Network, encode_array


@dataclass(frozen=True)
class OneClassModel:
    """Stored latent slices of shape ``(B, m, D)`` and the scoring radius."""

    stored: np.ndarray
    eta: float
    norm: Norm = Norm.L1

    def __post_init__(self) -> None:
        stored = np.array(self.stored, dtype=np.float64)
        if stored.ndim != 3 or stored.shape[1] < 1:
            raise InvalidInputError(f"Stored codes must have shape (B, m, D), got {stored.shape}")
        if not self.eta > 0:
            raise InvalidInputError(f"eta must be positive, got {self.eta}")
        stored.setflags(write=False)
        object.__setattr__(self, "stored", stored)
        object.__setattr__(self, "norm", Norm(self.norm))

    @property
    def branches(self) -> int:
        return int(self.stored.shape[0])

    @property
    def sample_count(self) -> int:
        return int(self.stored.shape[1])

    @property
    def branch_dim(self) -> int:
        return int(self.stored.shape[2])

    @classmethod
    def from_latent(
        cls, latent: np.ndarray, branches: int, eta: float, norm: Norm = Norm.L1
    ) -> "OneClassModel":
        """Split ``(m, B * D)`` latent codes into per-branch slices."""
        latent = np.asarray(latent, dtype=np.float64)
        if latent.ndim != 2 or latent.shape[1] % branches != 0:
            raise InvalidInputError(
                f"Latent codes of shape {latent.shape} do not split into {branches} branches"
            )
        m, width = latent.shape
        stored = latent.reshape(m, branches, width // branches).transpose(1, 0, 2)
        return cls(stored=stored, eta=eta, norm=norm)


def fit(
    encoder: Network,
    samples: Union[np.ndarray, torch.Tensor],
    eta: float,
    norm: Norm = Norm.L1,
) -> OneClassModel:
    """Encode ``samples`` once and store their per-branch codes; nothing is optimized."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[0] < 1:
        raise InvalidInputError("fit needs at least one sample")
    return OneClassModel.from_latent(encode_array(encoder, samples), encoder.branches, eta, norm)


def score_latent(model: OneClassModel, latent: np.ndarray) -> np.ndarray:
    """Scores of queries given by their ``(q, B * D)`` latent codes."""
    latent = np.asarray(latent, dtype=np.float64)
    if latent.ndim == 1:
        latent = latent.reshape(1, -1)
    if latent.shape[1] != model.branches * model.branch_dim:
        raise InvalidInputError(
            f"Query codes have width {latent.shape[1]}, "
            f"model expects {model.branches * model.branch_dim}"
        )
    queries = latent.reshape(latent.shape[0], model.branches, model.branch_dim)
    scores = np.zeros(latent.shape[0], dtype=np.int64)
    for j in range(model.branches):
        diff = queries[:, j, None, :] - model.stored[j][None, :, :]
        if model.norm is Norm.L1:
            distances = np.abs(diff).sum(axis=2)
        else:
            distances = np.sqrt((diff * diff).sum(axis=2))
        scores += (distances <= model.eta).sum(axis=1)
    return scores


def score(
    model: OneClassModel, encoder: Network, queries: Union[np.ndarray, torch.Tensor]
) -> np.ndarray:
    """Integer scores in ``[0, B * m]`` for every query row."""
    return score_latent(model, encode_array(encoder, np.asarray(queries, dtype=np.float64)))
