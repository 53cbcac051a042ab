"""Plane-wave convergence study command."""

from dataclasses import replace
import sys
from pathlib import Path
from typing import Annotated

import typer

from py_poro_ader.cli.common import (
    EXIT_NUMERICAL,
    ConfigOption,
    command_errors,
    load_config,
    output_paths_for,
)
from py_poro_ader.cli.flops import OutputFormat
from py_poro_ader.config.loader import config_hash
from py_poro_ader.core.planewave.study import build_rows, convergence_study
from py_poro_ader.exceptions import ValidationError
from py_poro_ader.runtime.export import STUDY_HEADER, study_rows, write_csv, write_csv_file
from py_poro_ader.runtime.journal import write_run_record
from py_poro_ader.ui.console import make_console, make_stderr_console
from py_poro_ader.ui.live import LiveStudyRenderer
from py_poro_ader.ui.study_view import render_study_table


def convergence_command(
    config: ConfigOption,
    workers: Annotated[
        int | None, typer.Option("--workers", "-w", help="Concurrent cells (default from config)")
    ] = None,
    output: Annotated[
        OutputFormat, typer.Option("--format", "-f", case_sensitive=False)
    ] = OutputFormat.CSV,
    csv_path: Annotated[
        Path | None, typer.Option("--output", "-o", help="Also write the CSV to this file")
    ] = None,
) -> None:
    """Run every (order, subdivisions) cell of [study] and report observed orders."""
    with command_errors("convergence"):
        loaded = load_config(config)
        if workers is not None:
            if workers < 1:
                raise ValidationError(f"workers must be >= 1, got {workers}")
            loaded = replace(loaded, study=replace(loaded.study, workers=workers))

    paths = output_paths_for(loaded)
    study = loaded.study

    if output is OutputFormat.TABLE:
        console = make_console()
        with LiveStudyRenderer(make_stderr_console()) as renderer:

            async def emit(event):
                renderer.push(event)

            record = convergence_study(
                study.orders, study.subdivisions, loaded, study.workers, emit
            )
    else:
        record = convergence_study(study.orders, study.subdivisions, loaded, study.workers)

    write_run_record(paths.runs_dir, record)
    rows = build_rows(record)
    csv_options = {
        "config_hash": config_hash(loaded),
        "seed": loaded.run.seed,
        "precision": loaded.output.precision,
    }
    if csv_path is not None:
        write_csv_file(csv_path, STUDY_HEADER, study_rows(rows), **csv_options)

    if output is OutputFormat.TABLE:
        render_study_table(console, rows)
        console.print(f"run_id: {record.run_id}")
    else:
        write_csv(sys.stdout, STUDY_HEADER, study_rows(rows), **csv_options)

    if record.summary.failed:
        make_stderr_console().print(
            f"[error]convergence: {record.summary.failed} of {record.summary.cells} cells failed[/]"
        )
        raise typer.Exit(code=EXIT_NUMERICAL)
