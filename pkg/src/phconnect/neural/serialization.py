"""
JSON model files.

Layout::

    {"format": "phconnect-model", "version": 1, "kind": "branched_autoencoder",
     "spec": {...}, "train": {...},
     "parameters": {name: {"shape": [...], "values": [...]}}}

Parameter values are flat row-major lists; JSON floats carry full
round-trip precision.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import torch
from pydantic import ValidationError

from ..exceptions import DataError
from .autoencoder import BranchedAutoencoder, ConnectivityMlp
from .layers import DTYPE
from .models import AutoencoderSpec, MlpSpec, TrainConfig
from .training import Network

MODEL_FORMAT = "phconnect-model"
MODEL_VERSION = 1

KINDS = {
    "branched_autoencoder": (BranchedAutoencoder, AutoencoderSpec),
    "mlp": (ConnectivityMlp, MlpSpec),
}


def _kind_of(model: Network) -> str:
    return "branched_autoencoder" if isinstance(model, BranchedAutoencoder) else "mlp"


def model_to_dict(model: Network, train_config: Optional[TrainConfig] = None) -> Dict[str, Any]:
    parameters = {
        name: {"shape": list(tensor.shape), "values": tensor.detach().reshape(-1).tolist()}
        for name, tensor in model.state_dict().items()
    }
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "kind": _kind_of(model),
        "spec": model.spec.model_dump(mode="json"),
        "train": (train_config or TrainConfig()).model_dump(mode="json", by_alias=True),
        "parameters": parameters,
    }


def model_from_dict(payload: Dict[str, Any]) -> Tuple[Network, TrainConfig]:
    if payload.get("format") != MODEL_FORMAT:
        raise DataError(f"Not a model file: format is {payload.get('format')!r}")
    if payload.get("version") != MODEL_VERSION:
        raise DataError(f"Unsupported model file version {payload.get('version')!r}")
    kind = payload.get("kind", "branched_autoencoder")
    if kind not in KINDS:
        raise DataError(f"Unknown model kind {kind!r}")
    model_cls, spec_cls = KINDS[kind]
    try:
        spec = spec_cls.model_validate(payload["spec"])
        train_config = TrainConfig.model_validate(payload.get("train", {}))
    except (KeyError, ValidationError) as e:
        raise DataError(f"Invalid model file: {e}") from e

    model = model_cls(spec)
    state = {}
    try:
        for name, entry in payload["parameters"].items():
            state[name] = torch.tensor(entry["values"], dtype=DTYPE).reshape(entry["shape"])
        model.load_state_dict(state, strict=True)
    except (KeyError, RuntimeError, TypeError) as e:
        raise DataError(f"Model parameters do not match the stored spec: {e}") from e
    return model, train_config


def save_model(
    model: Network, path: Union[str, Path], train_config: Optional[TrainConfig] = None
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(model_to_dict(model, train_config)), encoding="utf-8")
    return path


def load_model(path: Union[str, Path]) -> Tuple[Network, TrainConfig]:
    """Read a model file written by :func:`save_model`."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise DataError(f"Cannot read model file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise DataError(f"Model file {path} is not valid JSON: {e}") from e
    return model_from_dict(payload)
