"""Reference operator export."""

import sys
from pathlib import Path
from typing import Annotated

import typer

from py_poro_ader.cli.common import command_errors
from py_poro_ader.config.defaults import DEFAULT_PRECISION
from py_poro_ader.core.basis.operators import build_reference_operators, reference_matrices
from py_poro_ader.runtime.export import OPERATOR_HEADER, operator_rows, write_csv, write_csv_file


def dump_operators_command(
    order: Annotated[int, typer.Option("--order", "-N", help="Polynomial degree")] = 3,
    output: Annotated[
        Path | None, typer.Option("--output", "-o", help="Write CSV here instead of stdout")
    ] = None,
    precision: Annotated[
        int, typer.Option("--precision", help="Significant digits")
    ] = DEFAULT_PRECISION,
) -> None:
    """Dump mass, stiffness and temporal matrices as (matrix, row, col, value) CSV."""
    with command_errors("dump-operators"):
        rows = operator_rows(reference_matrices(build_reference_operators(order)))
    if output is None:
        write_csv(sys.stdout, OPERATOR_HEADER, rows, precision=precision)
        return
    write_csv_file(output, OPERATOR_HEADER, rows, precision=precision)
