"""
Commands evaluating the connectivity bounds and the annulus-neighbor lemma.
"""

from typing import Optional

import typer
from rich.table import Table

from ..analysis import (
    AnnulusSpec,
    batch_size_condition,
    entropy_bound,
    separation_threshold,
    verify_lemma1,
)
from .common import app, console, record_config, run_config, seed_option, threads_option


@app.command()
def bounds(
    ctx: typer.Context,
    alpha: Optional[float] = typer.Option(None, "--alpha", help="Smallest merge distance"),
    beta: Optional[float] = typer.Option(None, "--beta", help="Largest merge distance"),
    eta: Optional[float] = typer.Option(None, "--eta", help="Separation radius"),
    eps: Optional[float] = typer.Option(None, "--eps", help="Packing radius"),
    n: Optional[int] = typer.Option(None, "--n", min=1, help="Latent dimension"),
    b: Optional[int] = typer.Option(None, "--b", min=1, help="Batch size"),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Print the entropy bound, separation threshold and batch-size condition."""
    config = run_config(ctx, seed=seed, threads=threads).with_overrides(
        section="analysis", alpha=alpha, beta=beta, eta=eta, eps=eps, n=n, b=b
    )
    section = config.analysis
    spec = AnnulusSpec(alpha=section.alpha, beta=section.beta, n=section.n)

    table = Table(title="Connectivity bounds")
    table.add_column("quantity", style="cyan", no_wrap=True)
    table.add_column("value", no_wrap=True)
    table.add_row("entropy_bound", f"{entropy_bound(spec, section.eps):.17g}")
    table.add_row(
        "separation_threshold",
        str(separation_threshold(section.b, section.alpha, section.beta, section.eta, section.n)),
    )
    table.add_row(
        "batch_size_condition",
        str(batch_size_condition(section.alpha, section.beta, section.n)),
    )
    console.print(table)
    record_config(config, None)


@app.command("verify-lemma1")
def verify_lemma1_command(
    ctx: typer.Context,
    m: Optional[int] = typer.Option(None, "--m", min=2, help="Cloud size"),
    b: Optional[int] = typer.Option(None, "--b", min=2, help="Subset size"),
    n: Optional[int] = typer.Option(None, "--n", min=1, help="Ambient dimension"),
    trials: Optional[int] = typer.Option(None, "--trials", min=0, help="Random clouds"),
    alpha: Optional[float] = typer.Option(None, "--alpha", help="Fixed inner radius"),
    beta: Optional[float] = typer.Option(None, "--beta", help="Fixed outer radius"),
    seed: Optional[int] = seed_option(),
    threads: Optional[int] = threads_option(),
):
    """Check the annulus-neighbor lemma by exhaustive subset enumeration."""
    config = run_config(ctx, seed=seed, threads=threads)
    config = config.with_overrides(section="analysis", m=m, b=b, n=n, trials=trials)
    section = config.analysis
    report = verify_lemma1(
        section.m,
        section.b,
        section.n,
        section.trials,
        seed=config.seed,
        alpha=alpha,
        beta=beta,
    )

    table = Table(title="Annulus-neighbor lemma check")
    table.add_column("quantity", style="cyan", no_wrap=True)
    table.add_column("value", no_wrap=True)
    table.add_row("m", str(report.m))
    table.add_row("b", str(report.b))
    table.add_row("n", str(report.n))
    table.add_row("trials", str(report.trials))
    table.add_row("subsets_per_trial", str(report.subsets_per_trial))
    table.add_row("radii", "measured" if report.measured_radii else "fixed")
    table.add_row("premise_hits", str(report.premise_hits))
    table.add_row("hit_rate", f"{report.hit_rate:.4f}")
    table.add_row("violations", str(report.violations))
    console.print(table)
    record_config(config, None)
