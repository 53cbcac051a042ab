"""Tables for material speeds, cost model and the predictor agreement suite."""

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from py_poro_ader.core.material import MaterialParameters, WaveSpeeds
from py_poro_ader.core.stp.cost import CostReport
from py_poro_ader.core.stp.equivalence import EquivalenceReport


def render_speeds(
    console: Console,
    params: MaterialParameters,
    speeds: WaveSpeeds,
    direction: tuple[float, float, float],
    closed_form: tuple[float, float] | None = None,
) -> None:
    table = Table(title="WAVE SPEEDS")
    table.add_column("Wave", width=10)
    table.add_column("Speed [m/s]", justify="right")
    if closed_form is not None:
        table.add_column("1D closed form [m/s]", justify="right")

    rows = (
        ("fast P", speeds.fast_p, closed_form[0] if closed_form else None),
        ("shear", speeds.shear, None),
        ("slow P", speeds.slow_p, closed_form[1] if closed_form else None),
    )
    for name, value, reference in rows:
        cells = [name, f"{value:.1f}"]
        if closed_form is not None:
            cells.append("-" if reference is None else f"{reference:.1f}")
        table.add_row(*cells)

    console.print(table)
    direction_text = ", ".join(f"{component:g}" for component in direction)
    console.print(f"direction: ({direction_text})  viscosity: {params.nu:g} Pa s")
    console.print(f"max_speed: {speeds.maximum:.1f}")


def render_cost_table(console: Console, reports: tuple[CostReport, ...]) -> None:
    table = Table(title="PREDICTOR COST")
    table.add_column("N", justify="right")
    table.add_column("Unknowns", justify="right")
    table.add_column("Flops LU", justify="right")
    table.add_column("Flops STP", justify="right")
    table.add_column("Reduction", justify="right")
    table.add_column("LU [MB]", justify="right")
    table.add_column("STP [MB]", justify="right")
    for report in reports:
        table.add_row(
            str(report.order),
            str(report.unknowns),
            str(report.flops_lu),
            str(report.flops_stp),
            f"{report.reduction:.2f}",
            f"{report.storage_lu_mb:.4f}",
            f"{report.storage_stp_mb:.7f}",
        )
    console.print(table)


def render_equivalence(console: Console, report: EquivalenceReport) -> None:
    status = "[success]agree[/]" if report.passed else "[error]mismatch[/]"
    body = "\n".join(
        [
            f"order: {report.order}",
            f"seed: {report.seed}",
            f"trials: {report.trials}",
            f"dense solve: {report.oracle_deviation:.3e}",
            f"alg1: {report.alg1_deviation:.3e}",
            f"alg2: {report.alg2_deviation:.3e}",
            f"status: {status}",
        ]
    )
    console.print(Panel(body, title="PREDICTOR AGREEMENT", border_style="cyan"))
    console.print(f"max_deviation: {report.max_deviation:.3e}")
    console.print(f"max_residual: {report.max_residual:.3e}")
