"""CSV writers with a provenance comment line."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
import csv
from pathlib import Path
from typing import TextIO

import numpy as np

from py_poro_ader import __version__
from py_poro_ader.config.defaults import DEFAULT_PRECISION, QUANTITY_NAMES
from py_poro_ader.core.models import StudyRow
from py_poro_ader.core.stp.cost import CostReport

COST_HEADER = (
    "order",
    "unknowns",
    "flops_lu",
    "flops_stp",
    "reduction",
    "storage_lu_mb",
    "storage_stp_mb",
)
STUDY_HEADER = ("order", "n", "h", "quantity", "norm", "error", "observed_order")
OPERATOR_HEADER = ("matrix", "row", "col", "value")
SNAPSHOT_HEADER = ("element", "quantity", "mode", "value")
CONSERVATION_HEADER = ("step", "time", "quantity", "integral")


def provenance_line(config_hash: str | None, seed: int | None) -> str:
    config = config_hash or "none"
    seed_text = "none" if seed is None else str(seed)
    return f"# py-poro-ader {__version__} config={config} seed={seed_text}"


def format_value(value, precision: int = DEFAULT_PRECISION) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{precision}g}"
    return str(value)


def write_csv(
    stream: TextIO,
    header: Sequence[str],
    rows: Iterable[Sequence],
    *,
    config_hash: str | None = None,
    seed: int | None = None,
    precision: int = DEFAULT_PRECISION,
) -> int:
    """Write provenance, header and rows; returns the number of data rows."""
    stream.write(provenance_line(config_hash, seed) + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([format_value(value, precision) for value in row])
        count += 1
    return count


def write_csv_file(path: Path, header: Sequence[str], rows: Iterable[Sequence], **kwargs) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        write_csv(handle, header, rows, **kwargs)
    return path


def cost_rows(reports: Iterable[CostReport]) -> list[tuple]:
    return [
        (
            report.order,
            report.unknowns,
            report.flops_lu,
            report.flops_stp,
            report.reduction,
            report.storage_lu_mb,
            report.storage_stp_mb,
        )
        for report in reports
    ]


def study_rows(rows: Iterable[StudyRow]) -> list[tuple]:
    return [
        (row.order, row.subdivisions, row.h, row.quantity, row.norm, row.error, row.observed_order)
        for row in sorted(
            rows,
            key=lambda row: (
                row.order,
                row.subdivisions,
                QUANTITY_NAMES.index(row.quantity),
                row.norm,
            ),
        )
    ]


def operator_rows(matrices: dict[str, np.ndarray]) -> list[tuple]:
    """Dense (matrix, row, col, value) listing, zeros included, in insertion order."""
    rows = []
    for name, matrix in matrices.items():
        matrix = np.atleast_2d(matrix)
        for (row, col), value in np.ndenumerate(matrix):
            rows.append((name, row, col, float(value)))
    return rows


def snapshot_rows(dofs: np.ndarray) -> list[tuple]:
    return [
        (element, QUANTITY_NAMES[quantity], mode, float(value))
        for (element, quantity, mode), value in np.ndenumerate(dofs)
    ]


def conservation_rows(log: Iterable[tuple[int, float, np.ndarray]]) -> list[tuple]:
    return [
        (step, time, QUANTITY_NAMES[index], float(integral))
        for step, time, integrals in log
        for index, integral in enumerate(integrals)
    ]
