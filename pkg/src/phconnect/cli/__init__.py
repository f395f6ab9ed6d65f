"""
Command-line interface for phconnect.

``dispatch`` maps outcomes to exit codes: 0 on success, 1 on usage
errors, 2 on invalid data or configuration.
"""

import sys
from typing import Optional, Sequence

import click
import typer
from pydantic import ValidationError

from ..exceptions import PhConnectError
from . import learning, theory, topology  # noqa: F401  (command registration)
from .common import app, err_console

__all__ = ["app", "dispatch", "main"]


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI on ``argv`` and return the exit code."""
    args = list(sys.argv[1:] if argv is None else argv)
    command = typer.main.get_command(app)
    if not args:
        command.main(args=["--help"], prog_name="phconnect", standalone_mode=False)
        return 1
    try:
        result = command.main(args=args, prog_name="phconnect", standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        return 1
    except click.exceptions.Abort:
        err_console.print("Aborted")
        return 1
    except (PhConnectError, ValidationError) as e:
        err_console.print(f"[bold red]Error:[/bold red] {e}")
        return 2
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
