"""Historical run inspection commands."""

from pathlib import Path
from typing import Annotated

import typer

from py_poro_ader.runtime.journal import list_runs, load_last_run, load_run
from py_poro_ader.state.paths import get_output_paths
from py_poro_ader.ui.console import make_console
from py_poro_ader.ui.runs_view import render_run_detail, render_runs_list

app = typer.Typer(help="Inspect persisted run and convergence records.")

OutputDirOption = Annotated[
    Path | None,
    typer.Option("--output-dir", help="Output directory (default: env override or state dir)"),
]


@app.command("list")
def list_runs_command(output_dir: OutputDirOption = None) -> None:
    paths = get_output_paths(output_dir)
    console = make_console()
    render_runs_list(console, list_runs(paths.runs_dir))


@app.command("show")
def show_run_command(
    run_id: Annotated[str, typer.Argument(help="Run id, or 'last'")],
    output_dir: OutputDirOption = None,
) -> None:
    paths = get_output_paths(output_dir)
    console = make_console()
    if run_id == "last":
        run = load_last_run(paths.runs_dir)
    else:
        run = load_run(paths.runs_dir, run_id)
    if run is None:
        console.print(f"[yellow]Run not found: {run_id}[/]")
        raise typer.Exit(code=1)
    render_run_detail(console, run)
