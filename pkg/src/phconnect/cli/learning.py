"""
Commands that train networks and evaluate one-class models.
"""

from pathlib import Path
from typing import List, Optional

import numpy as np
import structlog
import torch
import typer
from rich.table import Table

from ..exceptions import InvalidInputError
from ..geometry import io as geometry_io
from ..neural import (
    AutoencoderSpec,
    BranchedAutoencoder,
    branch_death_statistics,
    encode_array,
    load_model,
    save_model,
    toy_experiment,
    toy_train_config,
    train,
    write_toy_outputs,
)
from ..oneclass import evaluate_auc, fit, one_vs_all, score
from .common import (
    app,
    console,
    echo_float,
    header_option,
    record_config,
    run_config,
    seed_option,
    threads_option,
)

logger = structlog.get_logger(__name__)


def parse_widths(value: str) -> List[int]:
    """Parse comma-separated layer widths."""
    try:
        return [int(item.strip()) for item in value.split(",") if item.strip()]
    except ValueError as e:
        raise InvalidInputError(f"Invalid layer widths {value!r}") from e


@app.command("train-toy")
def train_toy(
    ctx: typer.Context,
    eta: Optional[float] = typer.Option(None, "--eta", help="Connectivity target"),
    epochs: Optional[int] = typer.Option(None, "--epochs", min=0, help="Training epochs"),
    batch_size: Optional[int] = typer.Option(None, "--batch-size", min=2, help="Batch size"),
    out_dir: Path = typer.Option(Path("toy_run"), "--out-dir", help="Output directory"),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Train the toy MLP on three 2-D Gaussians and dump curves and clouds."""
    torch.set_num_threads(1)
    config = run_config(ctx, seed=seed, threads=threads, out_dir=out_dir)
    config = config.with_overrides(section="train", eta=eta, epochs=epochs, batch_size=batch_size)
    explicit = {name: getattr(config.train, name) for name in config.train.model_fields_set}
    explicit.setdefault("seed", config.seed)
    train_config = toy_train_config(**explicit)
    config = config.model_copy(update={"train": train_config})

    result = toy_experiment(
        seed=config.seed,
        config=train_config,
        samples=config.toy.samples,
        clusters=config.toy.clusters,
        hidden_width=config.toy.hidden_width,
        evaluation_batches=config.toy.evaluation_batches,
        evaluation_batch_size=config.toy.evaluation_batch_size,
        dump_epochs=config.toy.dump_epochs,
    )
    write_toy_outputs(result, out_dir)
    record_config(config, out_dir)

    table = Table(title="Connectivity statistics")
    for column in ("epoch", "alpha_hat", "eps_hat", "beta_hat"):
        table.add_column(column)
    for epoch, stats in sorted(result.stats.items()):
        table.add_row(
            str(epoch),
            f"{stats.alpha_hat:.4f}",
            f"{stats.eps_hat:.4f}",
            f"{stats.beta_hat:.4f}",
        )
    console.print(table)


@app.command("train-ae")
def train_ae(
    ctx: typer.Context,
    data: Path = typer.Option(..., "--data", help="Training CSV"),
    labeled: bool = typer.Option(False, "--labeled/--unlabeled", help="Last column holds labels"),
    header: Optional[bool] = header_option(),
    hidden: str = typer.Option("16,16", "--hidden", help="Encoder widths after the input"),
    branches: int = typer.Option(1, "--branches", min=1, help="Latent branches B"),
    branch_dim: int = typer.Option(2, "--branch-dim", min=1, help="Latent dimension per branch D"),
    weight: Optional[float] = typer.Option(None, "--lambda", help="Connectivity loss weight"),
    eta: Optional[float] = typer.Option(None, "--eta", help="Connectivity target"),
    epochs: Optional[int] = typer.Option(None, "--epochs", min=0, help="Training epochs"),
    batch_size: Optional[int] = typer.Option(None, "--batch-size", min=2, help="Batch size"),
    model_out: Path = typer.Option(..., "--model-out", help="Model file (JSON)"),
    out_dir: Optional[Path] = typer.Option(None, "--out-dir", help="Curves and stats directory"),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Train a branched autoencoder with the joint objective."""
    torch.set_num_threads(1)
    out_dir = out_dir if out_dir is not None else model_out.parent
    config = run_config(ctx, seed=seed, threads=threads, out_dir=out_dir)
    config = config.with_overrides(section="geometry", header=header)
    config = config.with_overrides(
        section="train",
        eta=eta,
        epochs=epochs,
        batch_size=batch_size,
        **{"lambda": weight},
    )
    if "seed" not in config.train.model_fields_set:
        config = config.with_overrides(section="train", seed=config.seed)

    if labeled:
        features, _ = geometry_io.read_labeled(data, header=config.geometry.header)
    else:
        features = geometry_io.read_point_cloud(data, header=config.geometry.header).points
    spec = AutoencoderSpec(
        encoder_widths=[features.shape[1]] + parse_widths(hidden),
        branches=branches,
        branch_dim=branch_dim,
        seed=config.seed,
    )
    model = BranchedAutoencoder(spec)
    result = train(model, features, config.train)

    save_model(model, model_out, config.train)
    geometry_io.write_frame(out_dir / "loss_curve.csv", result.curves)
    geometry_io.write_point_cloud(out_dir / "latent.csv", encode_array(model, features))
    stats_batch = min(config.train.batch_size, features.shape[0])
    if stats_batch >= 2:
        stats = branch_death_statistics(
            model,
            features,
            stats_batch,
            config.toy.evaluation_batches,
            config.seed,
            config.train.norm,
        )
        geometry_io.write_frame(out_dir / "branch_stats.csv", stats)
    record_config(config, out_dir)
    logger.info("model_written", path=str(model_out))


@app.command("score")
def score_command(
    ctx: typer.Context,
    model_path: Path = typer.Option(..., "--model", help="Model file"),
    train_path: Path = typer.Option(..., "--train", help="Class samples to fit on"),
    query_path: Path = typer.Option(..., "--query", help="Query CSV"),
    out: Optional[Path] = typer.Option(None, "--out", help="Scores CSV (default stdout)"),
    eta: Optional[float] = typer.Option(None, "--eta", help="Scoring radius"),
    header: Optional[bool] = header_option(),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Fit a one-class model and score query samples."""
    torch.set_num_threads(1)
    config = run_config(ctx, seed=seed, threads=threads)
    config = config.with_overrides(section="geometry", header=header)
    model, train_config = load_model(model_path)
    radius = eta if eta is not None else train_config.eta
    samples = geometry_io.read_point_cloud(train_path, header=config.geometry.header).points
    queries = geometry_io.read_point_cloud(query_path, header=config.geometry.header).points

    one_class = fit(model, samples, radius, train_config.norm)
    scores = score(one_class, model, queries)
    if out is not None:
        geometry_io.write_scores(out, scores)
        record_config(config, None)
    else:
        for value in scores.tolist():
            typer.echo(str(value))


@app.command("eval-auc")
def eval_auc(
    ctx: typer.Context,
    positive: Path = typer.Option(..., "--positive", help="Scores of positive samples"),
    negative: Path = typer.Option(..., "--negative", help="Scores of negative samples"),
    header: Optional[bool] = header_option(),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Print the rank-based AUC of two score files."""
    config = run_config(ctx, seed=seed, threads=threads)
    config = config.with_overrides(section="geometry", header=header)
    positives = geometry_io.read_scores(positive, header=config.geometry.header)
    negatives = geometry_io.read_scores(negative, header=config.geometry.header)
    echo_float(evaluate_auc(positives, negatives))


@app.command("oneclass-eval")
def oneclass_eval(
    ctx: typer.Context,
    model_path: Path = typer.Option(..., "--model", help="Model file"),
    data: Path = typer.Option(..., "--data", help="Labeled CSV, integer labels in the last column"),
    train_data: Optional[Path] = typer.Option(None, "--train-data", help="Labeled CSV to fit on"),
    m: Optional[int] = typer.Option(None, "--m", min=1, help="Fit samples per class"),
    runs: Optional[int] = typer.Option(None, "--runs", min=1, help="Independent sample draws"),
    eta: Optional[float] = typer.Option(None, "--eta", help="Scoring radius"),
    out: Optional[Path] = typer.Option(None, "--out", help="Per-class AUC CSV (default stdout)"),
    header: Optional[bool] = header_option(),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Run the one-vs-all AUC protocol with a trained encoder."""
    torch.set_num_threads(1)
    config = run_config(ctx, seed=seed, threads=threads)
    config = config.with_overrides(section="geometry", header=header)
    config = config.with_overrides(section="oneclass", m=m, runs=runs, eta=eta)
    model, train_config = load_model(model_path)
    radius = config.oneclass.eta if config.oneclass.eta is not None else train_config.eta
    features, labels = geometry_io.read_labeled(data, header=config.geometry.header)
    train_features: Optional[np.ndarray] = None
    train_labels: Optional[np.ndarray] = None
    if train_data is not None:
        train_features, train_labels = geometry_io.read_labeled(
            train_data, header=config.geometry.header
        )

    result = one_vs_all(
        model,
        features,
        labels,
        m=config.oneclass.m,
        eta=radius,
        seed=config.seed,
        runs=config.oneclass.runs,
        norm=train_config.norm,
        train_features=train_features,
        train_labels=train_labels,
    )
    if out is not None:
        geometry_io.write_frame(out, result.table)
        record_config(config, out.parent)
        table = Table(title="One-vs-all AUC")
        table.add_column("label")
        table.add_column("mean_auc")
        for row in result.class_means().itertuples(index=False):
            table.add_row(str(row.label), f"{row.auc:.4f}")
        table.add_row("all", f"{result.mean_auc:.4f}")
        console.print(table)
    else:
        csv = result.table.to_csv(index=False, float_format=geometry_io.FLOAT_FORMAT)
        typer.echo(csv, nl=False)
    for entry in result.skipped:
        logger.warning("class_not_evaluated", **entry)
