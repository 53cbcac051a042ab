"""Single-simulation summary."""

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from py_poro_ader.config.defaults import QUANTITY_NAMES
from py_poro_ader.core.models import CellOutcome, CellStatus


def render_run_summary(
    console: Console,
    outcome: CellOutcome,
    run_id: str,
    artifacts: tuple[str, ...] = (),
) -> None:
    lines = [
        f"run_id: {run_id}",
        f"order: {outcome.order}",
        f"subdivisions: {outcome.subdivisions}",
        f"h: {outcome.h:g}",
        f"status: {outcome.status.value}",
        f"steps: {outcome.steps}",
        f"dt: {outcome.dt:.6e}",
        f"seconds: {outcome.seconds:.2f}",
    ]
    if outcome.max_residual is not None:
        lines.append(f"max_residual: {outcome.max_residual:.3e}")
    if outcome.failure:
        lines.append(f"failure: {outcome.failure}")
    lines += [f"artifact: {path}" for path in artifacts]
    style = "cyan" if outcome.status is CellStatus.COMPLETED else "red"
    console.print(Panel("\n".join(lines), title="RUN", border_style=style))

    if not outcome.errors:
        return

    norms = list(dict.fromkeys(entry.norm for entry in outcome.errors))
    table = Table(title="ERRORS AT T_END")
    table.add_column("Quantity", style="quantity")
    for norm in norms:
        table.add_column(norm, justify="right")
    values = {(entry.quantity, entry.norm): entry.error for entry in outcome.errors}
    for quantity in QUANTITY_NAMES:
        if (quantity, norms[0]) not in values:
            continue
        table.add_row(quantity, *(f"{values[(quantity, norm)]:.3e}" for norm in norms))
    console.print(table)
