"""Random agreement suite for the predictor."""

from typing import Annotated

import typer

from py_poro_ader.cli.common import EXIT_NUMERICAL, command_errors
from py_poro_ader.config.defaults import DEFAULT_SEED
from py_poro_ader.core.stp.equivalence import run_equivalence_suite
from py_poro_ader.ui.console import make_console
from py_poro_ader.ui.report_view import render_equivalence


def oracle_command(
    order: Annotated[int, typer.Option("--order", "-N", help="Polynomial degree")] = 3,
    seed: Annotated[
        int, typer.Option("--seed", help="Seed of the random instances")
    ] = DEFAULT_SEED,
    trials: Annotated[int, typer.Option("--trials", help="Number of random instances")] = 100,
) -> None:
    """Compare the fused predictor with the dense solve and both unfused variants."""
    console = make_console()
    with command_errors("oracle"):
        report = run_equivalence_suite(order, seed, trials)
    render_equivalence(console, report)
    if not report.passed:
        raise typer.Exit(code=EXIT_NUMERICAL)
