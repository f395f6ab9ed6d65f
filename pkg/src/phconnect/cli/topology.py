"""
Commands on point clouds: barcodes, losses, gradient checks and reduction benchmarks.
"""

import warnings
from pathlib import Path
from typing import Optional

import pandas as pd
import structlog
import typer
from rich.table import Table

from ..config import GeometrySection
from ..exceptions import DistanceTieWarning
from ..filtration import build_vr, complex_to_json
from ..geometry import Norm, PointCloud, distances_unique
from ..geometry import io as geometry_io
from ..loss import connectivity_loss_and_grad, grad_check_harness
from ..neural import network_grad_check_harness
from ..persistence import (
    Engine,
    ReductionMatrix,
    barcode_from_reduction,
    bench_reduction,
    format_barcode,
    persistence_unionfind,
    reduce_parallel,
    reduce_standard,
)
from .common import (
    app,
    console,
    echo_float,
    header_option,
    norm_option,
    record_config,
    resolve_norm,
    run_config,
    seed_option,
    threads_option,
)

logger = structlog.get_logger(__name__)


def _read_cloud(path: Path, geometry: GeometrySection) -> PointCloud:
    cloud = geometry_io.read_point_cloud(path, header=geometry.header, norm=geometry.norm)
    report = distances_unique(cloud, geometry.tie_tolerance)
    if not report.unique:
        pairs = len(report.colliding_pairs)
        logger.warning("distance_ties_detected", path=str(path), pairs=pairs)
        warnings.warn(
            f"{pairs} pairs in {path} have tied distances; "
            "ties are broken lexicographically",
            DistanceTieWarning,
            stacklevel=2,
        )
    return cloud


@app.command()
def barcode(
    ctx: typer.Context,
    input_path: Path = typer.Option(..., "--in", help="Point cloud CSV"),
    norm: Optional[Norm] = norm_option(),
    header: Optional[bool] = header_option(),
    engine: Engine = typer.Option(Engine.UNIONFIND, "--engine", help="Persistence engine"),
    matrix_out: Optional[Path] = typer.Option(None, "--matrix-out", help="Reduced matrix JSON"),
    complex_out: Optional[Path] = typer.Option(None, "--complex-out", help="Filtered complex JSON"),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Print the 0-dimensional barcode of a point cloud."""
    config = run_config(ctx, seed=seed, threads=threads)
    config = resolve_norm(config, norm).with_overrides(section="geometry", header=header)
    cloud = _read_cloud(input_path, config.geometry)
    complex_ = build_vr(cloud)

    reduced: Optional[ReductionMatrix] = None
    if engine is Engine.UNIONFIND:
        result = persistence_unionfind(complex_)
    else:
        matrix = ReductionMatrix.from_complex(complex_)
        if engine is Engine.STANDARD:
            reduced = reduce_standard(matrix)
        else:
            parallel = reduce_parallel(matrix, threads=config.resolved_threads())
            logger.info("reduction_finished", **parallel.stats.model_dump(mode="json"))
            reduced = parallel.matrix
        result = barcode_from_reduction(complex_, reduced)

    if matrix_out is not None:
        if reduced is None:
            reduced = reduce_standard(ReductionMatrix.from_complex(complex_))
        matrix_out.parent.mkdir(parents=True, exist_ok=True)
        matrix_out.write_text(reduced.to_json() + "\n", encoding="utf-8")
    if complex_out is not None:
        complex_out.parent.mkdir(parents=True, exist_ok=True)
        complex_out.write_text(complex_to_json(complex_) + "\n", encoding="utf-8")

    typer.echo(format_barcode(result), nl=False)
    record_config(config, None)


@app.command()
def loss(
    ctx: typer.Context,
    input_path: Path = typer.Option(..., "--in", help="Point cloud CSV"),
    eta: Optional[float] = typer.Option(None, "--eta", help="Connectivity target"),
    norm: Optional[Norm] = norm_option(),
    header: Optional[bool] = header_option(),
    grad: bool = typer.Option(False, "--grad/--no-grad", help="Also print the gradient as CSV"),
    grad_out: Optional[Path] = typer.Option(None, "--grad-out", help="Write the gradient CSV here"),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Print the connectivity loss of a point cloud."""
    config = run_config(ctx, seed=seed, threads=threads)
    config = resolve_norm(config, norm).with_overrides(section="geometry", header=header)
    config = config.with_overrides(section="loss", eta=eta)
    cloud = _read_cloud(input_path, config.geometry)
    result = connectivity_loss_and_grad(cloud, config.loss.eta)

    echo_float(result.value)
    if grad_out is not None:
        geometry_io.write_point_cloud(grad_out, result.gradient)
    elif grad:
        frame = pd.DataFrame(result.gradient)
        csv = frame.to_csv(header=False, index=False, float_format=geometry_io.FLOAT_FORMAT)
        typer.echo(csv, nl=False)
    record_config(config, None)


@app.command("grad-check")
def grad_check(
    ctx: typer.Context,
    norm: Optional[Norm] = typer.Option(None, "--norm", help="Distance norm (default l2)"),
    trials: int = typer.Option(100, "--trials", min=0, help="Random clouds or networks to check"),
    eta: Optional[float] = typer.Option(None, "--eta", help="Connectivity target"),
    network: bool = typer.Option(False, "--network/--no-network", help="Check network gradients"),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Compare analytic gradients with central finite differences."""
    config = run_config(ctx, seed=seed, threads=threads).with_overrides(section="loss", eta=eta)
    if network:
        report = network_grad_check_harness(trials, seed=config.seed, eta=config.loss.eta)
    else:
        report = grad_check_harness(
            trials, norm=norm or Norm.L2, eta=config.loss.eta, seed=config.seed
        )
    typer.echo(f"max_relative_error\t{report.max_relative_error:.17g}")
    typer.echo(f"checked\t{report.checked}")
    typer.echo(f"skipped\t{report.skipped}")
    typer.echo(f"passed\t{str(report.passed).lower()}")
    record_config(config, None)


@app.command("bench-reduce")
def bench_reduce(
    ctx: typer.Context,
    sizes: Optional[str] = typer.Option(None, "--sizes", help="Comma-separated cloud sizes"),
    n: Optional[int] = typer.Option(None, "--n", min=1, help="Ambient dimension"),
    repetitions: Optional[int] = typer.Option(None, "--repetitions", min=0, help="Trials per size"),
    out: Optional[Path] = typer.Option(None, "--out", help="Timing CSV"),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Time the three persistence engines and check that they agree."""
    config = run_config(ctx, seed=seed, threads=threads)
    config = config.with_overrides(
        section="bench", sizes=sizes, dimension=n, repetitions=repetitions
    )
    frame = bench_reduction(
        config.bench.sizes,
        config.bench.dimension,
        config.bench.repetitions,
        seed=config.seed,
        threads=config.resolved_threads(),
    )

    if out is not None:
        geometry_io.write_frame(out, frame)
        record_config(config, out.parent)

    table = Table(title="Reduction benchmark")
    for column in ("size", "engine", "mean_seconds", "mean_iterations"):
        table.add_column(column, style="cyan" if column == "engine" else None)
    for row in frame.itertuples(index=False):
        table.add_row(
            str(row.size),
            row.engine,
            f"{row.mean_seconds:.6f}",
            f"{row.mean_iterations:.2f}",
        )
    console.print(table)

