import csv
import io
from pathlib import Path

import numpy as np

from py_poro_ader import __version__
from py_poro_ader.core.models import StudyRow
from py_poro_ader.core.stp.cost import cost_model
from py_poro_ader.runtime.export import (
    COST_HEADER,
    OPERATOR_HEADER,
    STUDY_HEADER,
    conservation_rows,
    cost_rows,
    format_value,
    operator_rows,
    provenance_line,
    snapshot_rows,
    study_rows,
    write_csv,
    write_csv_file,
)


def _parse(text: str) -> tuple[str, list[list[str]]]:
    first, _, rest = text.partition("\n")
    return first, list(csv.reader(io.StringIO(rest)))


def test_provenance_line() -> None:
    assert provenance_line("abc", 3) == f"# py-poro-ader {__version__} config=abc seed=3"
    assert provenance_line(None, None).endswith("config=none seed=none")


def test_format_value() -> None:
    assert format_value(None) == ""
    assert format_value(True) == "true"
    assert format_value(np.int64(7)) == "7"
    assert format_value(1.0 / 3.0, precision=4) == "0.3333"
    assert format_value(np.float64(2.5e-12)) == "2.5e-12"
    assert format_value("L2") == "L2"


def test_cost_table_rows() -> None:
    stream = io.StringIO()
    count = write_csv(stream, COST_HEADER, cost_rows([cost_model(6)]), precision=9)
    comment, rows = _parse(stream.getvalue())

    assert count == 1
    assert comment.startswith("# py-poro-ader")
    assert rows[0] == list(COST_HEADER)
    assert rows[1][:2] == ["6", "7644"]
    assert float(rows[1][4]) == float(format(cost_model(6).reduction, ".9g"))


def test_study_rows_are_sorted_with_blank_first_order() -> None:
    rows = [
        StudyRow(3, 4, 0.5, "p", "L2", 1e-3, None),
        StudyRow(2, 8, 0.25, "sigma_xx", "L2", 2e-4, 2.9),
        StudyRow(2, 4, 0.5, "u", "L1", 5e-3, None),
        StudyRow(2, 4, 0.5, "sigma_xx", "L2", 1.6e-3, None),
    ]
    stream = io.StringIO()
    write_csv(stream, STUDY_HEADER, study_rows(rows), config_hash="feed", seed=1)
    comment, parsed = _parse(stream.getvalue())

    assert comment.endswith("config=feed seed=1")
    assert parsed[0] == ["order", "n", "h", "quantity", "norm", "error", "observed_order"]
    assert [(row[0], row[1], row[3]) for row in parsed[1:]] == [
        ("2", "4", "sigma_xx"),
        ("2", "4", "u"),
        ("2", "8", "sigma_xx"),
        ("3", "4", "p"),
    ]
    assert parsed[1][6] == ""
    assert parsed[3][6] == "2.9"


def test_operator_rows_list_every_entry() -> None:
    rows = operator_rows({"mass": np.array([1.0, 2.0]), "K": np.eye(2)})

    assert rows[0] == ("mass", 0, 0, 1.0)
    assert rows[1] == ("mass", 0, 1, 2.0)
    assert len(rows) == 2 + 4
    assert rows[-1] == ("K", 1, 1, 1.0)
    assert OPERATOR_HEADER == ("matrix", "row", "col", "value")


def test_snapshot_and_conservation_rows() -> None:
    dofs = np.zeros((2, 13, 1))
    dofs[1, 9, 0] = 4.0
    snapshot = snapshot_rows(dofs)
    assert len(snapshot) == 26
    assert (1, "p", 0, 4.0) in snapshot

    integrals = np.arange(13.0)
    rows = conservation_rows([(0, 0.0, integrals), (1, 1e-6, integrals)])
    assert len(rows) == 26
    assert rows[12] == (0, 0.0, "w_f", 12.0)


def test_write_csv_file_creates_parents(tmp_path: Path) -> None:
    path = write_csv_file(tmp_path / "a" / "b.csv", ("x",), [(1,), (2,)], seed=4)

    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].endswith("seed=4")
    assert lines[1:] == ["x", "1", "2"]
