"""Plane-wave convergence study: one simulation per (order, subdivisions) cell."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import partial
import math
import time

import anyio
import structlog

from py_poro_ader.config.defaults import QUANTITY_NAMES
from py_poro_ader.config.loader import Config, config_hash
from py_poro_ader.core.dg.solver import RunDiagnostics, SimulationState, simulate
from py_poro_ader.core.material import Material
from py_poro_ader.core.mesh.cube import build_periodic_cube_mesh
from py_poro_ader.core.models import CellOutcome, CellStatus, ErrorEntry, RunRecord, StudyRow
from py_poro_ader.core.planewave.modes import plane_wave_modes
from py_poro_ader.core.planewave.norms import error_norms
from py_poro_ader.core.planewave.projection import project_initial_condition
from py_poro_ader.exceptions import PoroAderError
from py_poro_ader.runtime.executor import Emit, execute_study

log = structlog.get_logger()


async def _discard(_event) -> None:
    return None


@dataclass(frozen=True, eq=False)
class PlaneWaveRun:
    outcome: CellOutcome
    state: SimulationState | None = None
    diagnostics: RunDiagnostics | None = None


def simulate_plane_wave(
    order: int, subdivisions: int, config: Config, *, log_conservation: bool = False
) -> PlaneWaveRun:
    """Simulate the configured plane wave to t_end and measure its error norms.

    Library errors are folded into a failed outcome so one diverging cell does
    not abort the rest of the study.
    """
    started = time.perf_counter()
    h = 0.0
    try:
        material = Material.from_parameters(config.material)
        mesh = build_periodic_cube_mesh(subdivisions)
        h = mesh.h
        solution = plane_wave_modes(
            material, config.planewave.wave_vector, config.planewave.amplitudes
        )
        initial = project_initial_condition(mesh, solution, order)
        state, diagnostics = simulate(
            mesh,
            material,
            order,
            initial,
            config.run.t_end,
            cfl_factor=config.run.cfl_factor,
            log_conservation=log_conservation,
            residual_check_every=config.run.residual_check_every,
        )
        report = error_norms(mesh, state.dofs, solution, state.time, order)
    except PoroAderError as exc:
        log.warning("study_cell_failed", order=order, subdivisions=subdivisions, error=str(exc))
        outcome = CellOutcome(
            order=order,
            subdivisions=subdivisions,
            h=h,
            status=CellStatus.FAILED,
            seconds=time.perf_counter() - started,
            failure=str(exc),
        )
        return PlaneWaveRun(outcome=outcome)

    errors = tuple(
        ErrorEntry(quantity=name, norm=norm, error=report.value(norm, index))
        for index, name in enumerate(QUANTITY_NAMES)
        for norm in config.study.norms
    )
    seconds = time.perf_counter() - started
    log.info(
        "study_cell_completed",
        order=order,
        subdivisions=subdivisions,
        steps=diagnostics.steps,
        seconds=round(seconds, 3),
    )
    outcome = CellOutcome(
        order=order,
        subdivisions=subdivisions,
        h=h,
        status=CellStatus.COMPLETED,
        steps=diagnostics.steps,
        dt=diagnostics.dt,
        seconds=seconds,
        errors=errors,
        max_residual=diagnostics.max_residual,
    )
    return PlaneWaveRun(outcome=outcome, state=state, diagnostics=diagnostics)


def run_cell(order: int, subdivisions: int, config: Config) -> CellOutcome:
    return simulate_plane_wave(order, subdivisions, config).outcome


def observed_orders(rows: list[StudyRow]) -> list[StudyRow]:
    """Fill ``observed_order`` from consecutive refinements of each series.

    The coarsest mesh of every (order, quantity, norm) series keeps ``None``,
    as does any pair where either error is not strictly positive.
    """
    series: dict[tuple[int, str, str], list[StudyRow]] = defaultdict(list)
    for row in rows:
        series[(row.order, row.quantity, row.norm)].append(row)

    rates: dict[tuple[int, int, str, str], float | None] = {}
    for (order, quantity, norm), members in series.items():
        members.sort(key=lambda row: row.subdivisions)
        rates[(order, members[0].subdivisions, quantity, norm)] = None
        for coarse, fine in zip(members, members[1:], strict=False):
            rate = None
            if coarse.error > 0 and fine.error > 0 and coarse.h != fine.h:
                rate = math.log(coarse.error / fine.error) / math.log(coarse.h / fine.h)
            rates[(order, fine.subdivisions, quantity, norm)] = rate

    return [
        StudyRow(
            order=row.order,
            subdivisions=row.subdivisions,
            h=row.h,
            quantity=row.quantity,
            norm=row.norm,
            error=row.error,
            observed_order=rates[(row.order, row.subdivisions, row.quantity, row.norm)],
        )
        for row in rows
    ]


def build_rows(record: RunRecord) -> list[StudyRow]:
    """Flatten completed cells into CSV rows, ordered by order, n, quantity, norm."""
    rows = [
        StudyRow(
            order=outcome.order,
            subdivisions=outcome.subdivisions,
            h=outcome.h,
            quantity=entry.quantity,
            norm=entry.norm,
            error=entry.error,
            observed_order=None,
        )
        for outcome in record.outcomes
        if outcome.status is CellStatus.COMPLETED
        for entry in outcome.errors
    ]
    return observed_orders(rows)


def convergence_study(
    orders: tuple[int, ...],
    subdivisions: tuple[int, ...],
    config: Config,
    workers: int = 1,
    emit: Emit | None = None,
) -> RunRecord:
    cells = tuple((order, n) for order in orders for n in sorted(subdivisions))
    log.info("study_started", cells=len(cells), workers=workers)
    return anyio.run(
        partial(
            execute_study,
            command="convergence",
            cells=cells,
            run_cell=partial(run_cell, config=config),
            workers=workers,
            config_hash=config_hash(config),
            seed=config.run.seed,
            emit=emit or _discard,
        )
    )
