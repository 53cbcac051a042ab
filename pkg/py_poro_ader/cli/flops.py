"""Cost model of the predictor against a dense LU solve."""

import sys
from enum import Enum
from typing import Annotated

import typer

from py_poro_ader.cli.common import command_errors
from py_poro_ader.core.stp.cost import cost_model
from py_poro_ader.runtime.export import COST_HEADER, cost_rows, write_csv
from py_poro_ader.ui.console import make_console
from py_poro_ader.ui.report_view import render_cost_table

DEFAULT_FLOPS_ORDERS = (2, 3, 4, 5, 6)


class OutputFormat(str, Enum):
    CSV = "csv"
    TABLE = "table"


def flops_command(
    order: Annotated[
        list[int] | None,
        typer.Option("--order", "-N", help="Polynomial degree (repeatable, default 2..6)"),
    ] = None,
    output: Annotated[
        OutputFormat, typer.Option("--format", "-f", case_sensitive=False)
    ] = OutputFormat.CSV,
) -> None:
    """Emit unknowns, flops and storage of the predictor and the dense solve."""
    orders = tuple(sorted(set(order))) if order else DEFAULT_FLOPS_ORDERS
    with command_errors("flops"):
        reports = tuple(cost_model(value) for value in orders)

    if output is OutputFormat.TABLE:
        render_cost_table(make_console(), reports)
        return
    write_csv(sys.stdout, COST_HEADER, cost_rows(reports))
