"""Render persisted run history."""

from rich.console import Console
from rich.panel import Panel
from rich.table import Table


def render_runs_list(console: Console, runs) -> None:
    if not runs:
        console.print("[yellow]No recorded runs found.[/]")
        return

    table = Table(title="RUNS")
    table.add_column("Run ID", width=26)
    table.add_column("Command", width=12)
    table.add_column("Cells", width=6)
    table.add_column("Failed", width=6)
    table.add_column("Config", width=16)

    for run in runs:
        table.add_row(
            run.run_id,
            run.command,
            str(run.summary.cells),
            str(run.summary.failed),
            run.config_hash,
        )

    console.print(table)


def render_run_detail(console: Console, run) -> None:
    summary = "\n".join(
        [
            f"run_id: {run.run_id}",
            f"command: {run.command}",
            f"config: {run.config_hash}",
            f"seed: {run.seed}",
            f"started_at: {run.started_at}",
            f"finished_at: {run.finished_at or '-'}",
            f"cells: {run.summary.cells}",
            f"completed: {run.summary.completed}",
            f"failed: {run.summary.failed}",
            f"steps: {run.summary.steps}",
        ]
    )
    console.print(Panel(summary, title="RUN DETAIL", border_style="cyan"))

    if not run.outcomes:
        return

    outcomes = Table(title="CELL OUTCOMES")
    outcomes.add_column("N", width=3)
    outcomes.add_column("n", width=4)
    outcomes.add_column("Status", width=10)
    outcomes.add_column("Steps", justify="right")
    outcomes.add_column("Seconds", justify="right")
    outcomes.add_column("Failure")

    for outcome in run.outcomes:
        outcomes.add_row(
            str(outcome.order),
            str(outcome.subdivisions),
            outcome.status.value,
            str(outcome.steps),
            f"{outcome.seconds:.2f}",
            outcome.failure or "-",
        )

    console.print(outcomes)
