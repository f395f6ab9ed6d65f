"""
Shared Typer application, console and option helpers.
"""

from pathlib import Path
from typing import Any, Optional

import typer
from rich.console import Console

from ..config import RunConfig, get_settings, load_run_config, write_resolved_config
from ..geometry import Norm
from ..logging_setup import configure_logging

app = typer.Typer(
    name="phconnect",
    help="Connectivity control of latent spaces via 0-dimensional persistent homology",
    add_completion=False,
)

console = Console()
err_console = Console(stderr=True)


def seed_option() -> Any:
    return typer.Option(None, "--seed", min=0, help="Random seed")


def threads_option() -> Any:
    return typer.Option(
        None, "--threads", min=1, help="Worker threads (default: PHCONNECT_THREADS)"
    )


def norm_option() -> Any:
    return typer.Option(None, "--norm", help="Distance norm: l1 or l2")


def header_option() -> Any:
    return typer.Option(None, "--header/--no-header", help="Skip one header line in input CSVs")


@app.callback()
def root(
    ctx: typer.Context,
    config: Optional[Path] = typer.Option(
        None, "--config", "-c", help="JSON run configuration file"
    ),
    log_level: Optional[str] = typer.Option(
        None, "--log-level", help="Log level (default: PHCONNECT_LOG_LEVEL)"
    ),
    log_json: Optional[bool] = typer.Option(
        None, "--log-json/--no-log-json", help="Render logs as JSON lines"
    ),
    threads: Optional[int] = threads_option(),
    seed: Optional[int] = seed_option(),
):
    """Connectivity control of latent spaces via 0-dimensional persistent homology."""
    settings = get_settings()
    configure_logging(
        level=log_level or settings.log_level,
        json_output=settings.log_json if log_json is None else log_json,
    )
    ctx.obj = load_run_config(config).with_overrides(seed=seed, threads=threads)


def run_config(ctx: typer.Context, **values: Any) -> RunConfig:
    """Run configuration of the invoking command with top-level flags applied."""
    config = ctx.obj if isinstance(ctx.obj, RunConfig) else RunConfig()
    return config.with_overrides(**values)


def resolve_norm(config: RunConfig, norm: Optional[Norm]) -> RunConfig:
    return config.with_overrides(section="geometry", norm=norm)


def record_config(config: RunConfig, directory: Optional[Path]) -> None:
    """Write ``config.json`` into ``directory`` (or the configured out_dir)."""
    target = directory if directory is not None else config.out_dir
    if target is not None:
        write_resolved_config(config, Path(target))


def echo_float(value: float) -> None:
    typer.echo(f"{value:.17g}")
