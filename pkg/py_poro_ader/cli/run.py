"""Single plane-wave simulation with journal, snapshot and conservation log."""

from functools import partial
from typing import Annotated

import anyio
import typer

from py_poro_ader.cli.common import (
    EXIT_NUMERICAL,
    ConfigOption,
    command_errors,
    load_config,
    output_paths_for,
)
from py_poro_ader.config.loader import config_hash, with_run_overrides
from py_poro_ader.core.models import CellStatus
from py_poro_ader.core.planewave.study import PlaneWaveRun, simulate_plane_wave
from py_poro_ader.runtime.executor import execute_study
from py_poro_ader.runtime.export import (
    CONSERVATION_HEADER,
    SNAPSHOT_HEADER,
    conservation_rows,
    snapshot_rows,
    write_csv_file,
)
from py_poro_ader.runtime.journal import write_run_record
from py_poro_ader.ui.console import make_console
from py_poro_ader.ui.run_view import render_run_summary


async def _ignore(_event) -> None:
    return None


def run_command(
    config: ConfigOption,
    order: Annotated[
        int | None, typer.Option("--order", "-N", help="Override [run] order")
    ] = None,
    subdivisions: Annotated[
        int | None, typer.Option("--subdivisions", "-n", help="Override [run] subdivisions")
    ] = None,
    t_end: Annotated[float | None, typer.Option("--t-end", help="Override [run] t_end")] = None,
    snapshot: Annotated[
        bool, typer.Option("--snapshot/--no-snapshot", help="Write final coefficients as CSV")
    ] = False,
) -> None:
    """Run one plane-wave simulation and report its errors at t_end."""
    console = make_console()
    with command_errors("run"):
        loaded = load_config(config)
        loaded = with_run_overrides(loaded, order=order, subdivisions=subdivisions, t_end=t_end)

    paths = output_paths_for(loaded)
    digest = config_hash(loaded)
    results: list[PlaneWaveRun] = []

    def run_single(cell_order: int, cell_subdivisions: int):
        result = simulate_plane_wave(
            cell_order, cell_subdivisions, loaded, log_conservation=loaded.run.log_conservation
        )
        results.append(result)
        return result.outcome

    record = anyio.run(
        partial(
            execute_study,
            command="run",
            cells=((loaded.run.order, loaded.run.subdivisions),),
            run_cell=run_single,
            workers=1,
            config_hash=digest,
            seed=loaded.run.seed,
            emit=_ignore,
        )
    )
    write_run_record(paths.runs_dir, record)

    result = results[0]
    artifacts: list[str] = []
    csv_options = {
        "config_hash": digest,
        "seed": loaded.run.seed,
        "precision": loaded.output.precision,
    }
    if result.diagnostics is not None and result.diagnostics.conservation:
        path = write_csv_file(
            paths.tables_dir / f"{record.run_id}-conservation.csv",
            CONSERVATION_HEADER,
            conservation_rows(result.diagnostics.conservation),
            **csv_options,
        )
        artifacts.append(str(path))
    if snapshot and result.state is not None:
        path = write_csv_file(
            paths.tables_dir / f"{record.run_id}-snapshot.csv",
            SNAPSHOT_HEADER,
            snapshot_rows(result.state.dofs),
            **csv_options,
        )
        artifacts.append(str(path))

    render_run_summary(console, result.outcome, record.run_id, tuple(artifacts))
    if result.outcome.status is CellStatus.FAILED:
        raise typer.Exit(code=EXIT_NUMERICAL)
