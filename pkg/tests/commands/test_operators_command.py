from pathlib import Path

from typer.testing import CliRunner

from py_poro_ader.cli.app import app
from tests.commands.csv_output import parse_csv_output


runner = CliRunner()


def test_dump_operators_to_stdout() -> None:
    result = runner.invoke(app, ["-q", "dump-operators", "-N", "1"])
    assert result.exit_code == 0

    _, rows = parse_csv_output(result.stdout)
    assert rows[0] == ["matrix", "row", "col", "value"]
    names = {row[0] for row in rows[1:]}
    assert {"M", "K_xi", "W", "Z", "K_tau", "S_inv_w"} <= names
    mass = [row for row in rows[1:] if row[0] == "M"]
    assert len(mass) == 16


def test_dump_operators_to_file(tmp_path: Path) -> None:
    target = tmp_path / "ops.csv"
    result = runner.invoke(
        app, ["-q", "dump-operators", "-N", "2", "-o", str(target), "--precision", "6"]
    )
    assert result.exit_code == 0
    lines = target.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# py-poro-ader")
    assert lines[1] == "matrix,row,col,value"


def test_dump_operators_rejects_bad_order() -> None:
    result = runner.invoke(app, ["-q", "dump-operators", "-N", "0"])
    assert result.exit_code == 1
