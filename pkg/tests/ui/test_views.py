from py_poro_ader.core.material import WaveSpeeds
from py_poro_ader.core.models import (
    CellOutcome,
    CellStatus,
    ErrorEntry,
    RunRecord,
    RunSummary,
    StudyRow,
)
from py_poro_ader.core.stp.cost import cost_model
from py_poro_ader.core.stp.equivalence import EquivalenceReport
from py_poro_ader.ui.console import make_console
from py_poro_ader.ui.report_view import render_cost_table, render_equivalence, render_speeds
from py_poro_ader.ui.run_view import render_run_summary
from py_poro_ader.ui.runs_view import render_run_detail, render_runs_list
from py_poro_ader.ui.study_view import render_study_table
from tests.materials import UPPER_HALF_SPACE


def _console():
    return make_console(record=True, width=140)


def test_render_speeds_prints_max_speed() -> None:
    console = _console()
    speeds = WaveSpeeds(fast_p=4246.86, shear=2347.1, slow_p=1021.3)
    render_speeds(console, UPPER_HALF_SPACE, speeds, (1.0, 0.0, 0.0), (4246.86, 1021.3))
    output = console.export_text()
    assert "WAVE SPEEDS" in output
    assert "4246.9" in output
    assert "max_speed: 4246.9" in output


def test_render_cost_table() -> None:
    console = _console()
    render_cost_table(console, (cost_model(2), cost_model(6)))
    output = console.export_text()
    assert "PREDICTOR COST" in output
    assert "24.76" in output
    assert "59850" in output


def test_render_equivalence_reports_status() -> None:
    console = _console()
    report = EquivalenceReport(
        order=3,
        seed=7,
        trials=10,
        oracle_deviation=2e-13,
        alg1_deviation=1e-13,
        alg2_deviation=3e-13,
        max_residual=4e-15,
    )
    render_equivalence(console, report)
    output = console.export_text()
    assert "PREDICTOR AGREEMENT" in output
    assert "agree" in output
    assert "max_deviation: 3.000e-13" in output
    assert "max_residual: 4.000e-15" in output


def test_render_run_summary_with_errors() -> None:
    console = _console()
    outcome = CellOutcome(
        order=2,
        subdivisions=4,
        h=0.5,
        status=CellStatus.COMPLETED,
        steps=10,
        dt=1e-5,
        errors=(
            ErrorEntry(quantity="sigma_xx", norm="L2", error=1.5e-3),
            ErrorEntry(quantity="p", norm="L2", error=2.5e-4),
        ),
    )
    render_run_summary(console, outcome, "run-1", artifacts=("/tmp/run-1-snapshot.csv",))
    output = console.export_text()
    assert "RUN" in output
    assert "run_id: run-1" in output
    assert "ERRORS AT T_END" in output
    assert "1.500e-03" in output
    assert "artifact: /tmp/run-1-snapshot.csv" in output


def test_render_study_table() -> None:
    console = _console()
    rows = [
        StudyRow(2, 4, 0.5, "sigma_xx", "L2", 1.6e-3, None),
        StudyRow(2, 8, 0.25, "sigma_xx", "L2", 2e-4, 3.0),
        StudyRow(2, 8, 0.25, "p", "L2", 2e-4, 3.0),
    ]
    render_study_table(console, rows, quantities=("sigma_xx",))
    output = console.export_text()
    assert "CONVERGENCE" in output
    assert "3.00" in output
    assert " p " not in output


def test_render_study_table_without_rows() -> None:
    console = _console()
    render_study_table(console, [])
    assert "No completed cells to report." in console.export_text()


def test_render_runs_list_and_detail() -> None:
    console = _console()
    run = RunRecord(
        run_id="20260401T100000Z-aaaa0000",
        command="convergence",
        config_hash="0123456789abcdef",
        seed=0,
        started_at="2026-04-01T10:00:00+00:00",
        finished_at=None,
        events=(),
        outcomes=(
            CellOutcome(order=3, subdivisions=8, h=0.25, status=CellStatus.FAILED, failure="boom"),
        ),
        summary=RunSummary(cells=1, completed=0, failed=1, steps=0),
    )
    render_runs_list(console, (run,))
    render_run_detail(console, run)
    output = console.export_text()
    assert "RUNS" in output
    assert "RUN DETAIL" in output
    assert "CELL OUTCOMES" in output
    assert "boom" in output


def test_render_runs_list_empty() -> None:
    console = _console()
    render_runs_list(console, ())
    assert "No recorded runs found." in console.export_text()
