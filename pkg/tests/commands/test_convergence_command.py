from pathlib import Path

from typer.testing import CliRunner

from py_poro_ader.cli.app import app
from py_poro_ader.config.loader import config_hash, parse_config
from py_poro_ader.runtime.journal import list_runs
from tests.commands.csv_output import parse_csv_output


runner = CliRunner()


def test_convergence_csv(small_config: Path, tmp_path: Path) -> None:
    extra = tmp_path / "study.csv"
    result = runner.invoke(
        app, ["-q", "convergence", "-c", str(small_config), "-w", "2", "-o", str(extra)]
    )
    assert result.exit_code == 0

    comment, rows = parse_csv_output(result.stdout)
    digest = config_hash(parse_config(small_config))
    assert comment.endswith(f"config={digest} seed=0")
    assert rows[0] == ["order", "n", "h", "quantity", "norm", "error", "observed_order"]
    body = rows[1:]
    assert len(body) == 2 * 13 * 3
    assert body[0][:5] == ["1", "2", "1", "sigma_xx", "L1"]
    assert all(row[6] == "" for row in body if row[1] == "2")
    assert all(row[6] != "" for row in body if row[1] == "4")

    assert extra.read_text(encoding="utf-8").splitlines()[0] == comment
    runs = list_runs(tmp_path / "out" / "runs")
    assert [run.command for run in runs] == ["convergence"]


def test_convergence_table(small_config: Path) -> None:
    result = runner.invoke(app, ["-q", "convergence", "-c", str(small_config), "-f", "table"])
    assert result.exit_code == 0
    assert "CONVERGENCE" in result.stdout
    assert "run_id:" in result.stdout


def test_convergence_rejects_zero_workers(small_config: Path) -> None:
    result = runner.invoke(app, ["-q", "convergence", "-c", str(small_config), "-w", "0"])
    assert result.exit_code == 1
