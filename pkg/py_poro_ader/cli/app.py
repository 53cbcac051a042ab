"""Typer application entrypoint with global options."""

import logging
import sys
from typing import Annotated

import structlog
import typer

from .config_cmd import dump_config_command
from .convergence import convergence_command
from .flops import flops_command
from .operators import dump_operators_command
from .oracle import oracle_command
from .run import run_command
from .runs import app as runs_app
from .speeds import speeds_command


def _stderr_logger(*_args) -> structlog.PrintLogger:
    return structlog.PrintLogger(file=sys.stderr)


def _configure_structlog(level: int = logging.INFO) -> None:
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


_configure_structlog()

app = typer.Typer(
    no_args_is_help=True,
    add_completion=False,
    help="ADER-DG solver for poroelastic waves: predictor checks, cost model and plane-wave runs.",
)


@app.callback()
def main(
    verbose: Annotated[
        int,
        typer.Option("--verbose", "-v", count=True, help="Increase log verbosity (can repeat)"),
    ] = 0,
    quiet: Annotated[
        bool, typer.Option("--quiet", "-q", help="Only log warnings and errors")
    ] = False,
) -> None:
    """Global options for py-poro-ader."""
    if verbose and quiet:
        raise typer.BadParameter("--verbose and --quiet are mutually exclusive")
    if verbose:
        _configure_structlog(logging.DEBUG)
    elif quiet:
        _configure_structlog(logging.WARNING)
    else:
        _configure_structlog(logging.INFO)


app.command("convergence")(convergence_command)
app.command("flops")(flops_command)
app.command("oracle")(oracle_command)
app.command("run")(run_command)
app.command("speeds")(speeds_command)
app.command("dump-operators")(dump_operators_command)
app.command("dump-config")(dump_config_command)
app.add_typer(runs_app, name="runs")
