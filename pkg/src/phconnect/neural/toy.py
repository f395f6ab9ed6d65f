"""
Toy experiment: an MLP pushed towards a fixed merge distance on 2-D Gaussians.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import structlog

from ..analysis import ConnectivityStats, batch_stats_of
from ..geometry import io as geometry_io
from .autoencoder import ConnectivityMlp
from .models import MlpSpec, TrainConfig
from .training import Network, encode_array, train

logger = structlog.get_logger(__name__)

STATS_COLUMNS = ["epoch", "alpha_hat", "eps_hat", "beta_hat", "batch_size", "batch_count"]


def toy_train_config(**overrides: object) -> TrainConfig:
    """Training defaults of the toy run: no reconstruction, batch 50, eta 2, 60 epochs."""
    values = dict(
        eta=2.0,
        connectivity_weight=1.0,
        batch_size=50,
        epochs=60,
        use_reconstruction=False,
    )
    values.update(overrides)
    return TrainConfig(**values)


def gaussian_mixture(
    samples: int, clusters: int, rng: np.random.Generator, dimension: int = 2
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Samples from ``clusters`` Gaussians with random means and covariances.

    Returns:
        Tuple of ``(points, labels)``
    """
    means = rng.uniform(-4.0, 4.0, size=(clusters, dimension))
    counts = np.full(clusters, samples // clusters)
    counts[: samples % clusters] += 1
    points: List[np.ndarray] = []
    labels: List[np.ndarray] = []
    for k in range(clusters):
        factor = rng.normal(scale=0.5, size=(dimension, dimension))
        covariance = factor @ factor.T + 0.05 * np.eye(dimension)
        points.append(rng.multivariate_normal(means[k], covariance, size=int(counts[k])))
        labels.append(np.full(int(counts[k]), k, dtype=np.int64))
    return np.concatenate(points), np.concatenate(labels)


@dataclass
class ToyResult:
    model: ConnectivityMlp
    inputs: np.ndarray
    curves: pd.DataFrame
    stats: Dict[int, ConnectivityStats] = field(default_factory=dict)
    clouds: Dict[int, np.ndarray] = field(default_factory=dict)

    def stats_frame(self) -> pd.DataFrame:
        rows = [
            {"epoch": epoch, **stats.model_dump()}
            for epoch, stats in sorted(self.stats.items())
        ]
        return pd.DataFrame(rows, columns=STATS_COLUMNS)


def toy_experiment(
    seed: int = 0,
    config: Optional[TrainConfig] = None,
    samples: int = 1500,
    clusters: int = 3,
    hidden_width: int = 20,
    evaluation_batches: int = 3000,
    evaluation_batch_size: int = 50,
    dump_epochs: Sequence[int] = (0, 20, 60),
) -> ToyResult:
    """
    Train a ``2 -> hidden -> hidden -> 2`` MLP with only the connectivity loss.

    At each of ``dump_epochs`` the output cloud is recorded and the
    connectivity statistics are estimated on random output batches.
    """
    config = config if config is not None else toy_train_config(seed=seed)
    rng = np.random.default_rng(seed)
    inputs, _ = gaussian_mixture(samples, clusters, rng)
    model = ConnectivityMlp(MlpSpec(layer_widths=[2, hidden_width, hidden_width, 2], seed=seed))

    result = ToyResult(model=model, inputs=inputs, curves=pd.DataFrame())
    wanted = set(dump_epochs)

    def record(epoch: int, net: Network) -> None:
        if epoch not in wanted:
            return
        outputs = encode_array(net, inputs)
        result.clouds[epoch] = outputs
        eval_rng = np.random.default_rng([seed, epoch])
        result.stats[epoch] = batch_stats_of(
            outputs, evaluation_batch_size, evaluation_batches, eval_rng, config.norm
        )
        logger.info("toy_epoch_evaluated", epoch=epoch, **result.stats[epoch].model_dump())

    result.curves = train(model, inputs, config, callbacks=[record]).curves
    return result


def write_toy_outputs(result: ToyResult, out_dir: Path) -> List[Path]:
    """Loss curve, statistics and cloud dumps as CSV files in ``out_dir``."""
    out_dir = Path(out_dir)
    written = [
        geometry_io.write_frame(out_dir / "loss_curve.csv", result.curves),
        geometry_io.write_frame(out_dir / "stats.csv", result.stats_frame()),
        geometry_io.write_point_cloud(out_dir / "input_cloud.csv", result.inputs),
    ]
    for epoch, cloud in sorted(result.clouds.items()):
        target = out_dir / f"output_epoch_{epoch}.csv"
        written.append(geometry_io.write_point_cloud(target, cloud))
    return written
