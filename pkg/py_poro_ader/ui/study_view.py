"""Convergence table rendering."""

from rich.console import Console
from rich.table import Table

from py_poro_ader.core.models import StudyRow


def _format_order(value: float | None) -> str:
    return "-" if value is None else f"{value:.2f}"


def render_study_table(
    console: Console, rows: list[StudyRow], quantities: tuple[str, ...] | None = None
) -> None:
    selected = [row for row in rows if quantities is None or row.quantity in quantities]
    if not selected:
        console.print("[yellow]No completed cells to report.[/]")
        return

    table = Table(title="CONVERGENCE")
    table.add_column("N", justify="right", width=3)
    table.add_column("n", justify="right", width=4)
    table.add_column("h", justify="right")
    table.add_column("Quantity", style="quantity")
    table.add_column("Norm", width=5)
    table.add_column("Error", justify="right")
    table.add_column("Order", justify="right")
    for row in selected:
        table.add_row(
            str(row.order),
            str(row.subdivisions),
            f"{row.h:g}",
            row.quantity,
            row.norm,
            f"{row.error:.3e}",
            _format_order(row.observed_order),
        )
    console.print(table)
