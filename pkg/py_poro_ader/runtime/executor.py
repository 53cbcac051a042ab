"""Event-driven executor for convergence-study cells."""

from __future__ import annotations

from collections import Counter
from collections.abc import Awaitable, Callable
from datetime import UTC, datetime
from functools import partial
import uuid

import anyio

from py_poro_ader.core.models import (
    CellOutcome,
    CellStatus,
    RunEvent,
    RunEventType,
    RunRecord,
    RunSummary,
)

Emit = Callable[[RunEvent], Awaitable[None]]


def utc_now() -> str:
    return datetime.now(UTC).isoformat()


def build_run_id() -> str:
    timestamp = datetime.now(UTC).strftime("%Y%m%dT%H%M%SZ")
    return f"{timestamp}-{uuid.uuid4().hex[:8]}"


def summarize_outcomes(outcomes: tuple[CellOutcome, ...]) -> RunSummary:
    counts = Counter(item.status for item in outcomes)
    return RunSummary(
        cells=len(outcomes),
        completed=counts.get(CellStatus.COMPLETED, 0),
        failed=counts.get(CellStatus.FAILED, 0),
        steps=sum(item.steps for item in outcomes),
    )


def _event_type_for(outcome: CellOutcome) -> RunEventType:
    if outcome.status is CellStatus.FAILED:
        return RunEventType.CELL_FAILED
    return RunEventType.CELL_COMPLETED


async def _execute_cell(
    cell: tuple[int, int],
    *,
    run_id: str,
    run_cell: Callable[[int, int], CellOutcome],
    semaphore: anyio.Semaphore,
    lock: anyio.Lock,
    outcomes: list[CellOutcome],
    emit: Emit,
) -> None:
    order, subdivisions = cell
    await emit(
        RunEvent(
            run_id=run_id,
            event_type=RunEventType.CELL_QUEUED,
            ts=utc_now(),
            order=order,
            subdivisions=subdivisions,
        )
    )

    async with semaphore:
        await emit(
            RunEvent(
                run_id=run_id,
                event_type=RunEventType.CELL_STARTED,
                ts=utc_now(),
                order=order,
                subdivisions=subdivisions,
            )
        )
        outcome = await anyio.to_thread.run_sync(partial(run_cell, order, subdivisions))

        async with lock:
            outcomes.append(outcome)

        await emit(
            RunEvent(
                run_id=run_id,
                event_type=_event_type_for(outcome),
                ts=utc_now(),
                order=order,
                subdivisions=subdivisions,
                message=outcome.failure,
            )
        )


async def execute_study(
    *,
    command: str,
    cells: tuple[tuple[int, int], ...],
    run_cell: Callable[[int, int], CellOutcome],
    workers: int,
    config_hash: str,
    seed: int,
    emit: Emit,
) -> RunRecord:
    """Run every (order, subdivisions) cell, at most ``workers`` at a time."""
    run_id = build_run_id()
    started_at = utc_now()
    outcomes: list[CellOutcome] = []
    events: list[RunEvent] = []
    lock = anyio.Lock()
    semaphore = anyio.Semaphore(max(1, workers))

    async def record(event: RunEvent) -> None:
        events.append(event)
        await emit(event)

    await record(RunEvent(run_id=run_id, event_type=RunEventType.RUN_STARTED, ts=started_at))

    async with anyio.create_task_group() as tg:
        for cell in cells:
            tg.start_soon(
                partial(
                    _execute_cell,
                    cell,
                    run_id=run_id,
                    run_cell=run_cell,
                    semaphore=semaphore,
                    lock=lock,
                    outcomes=outcomes,
                    emit=record,
                )
            )

    finished_at = utc_now()
    ordered = tuple(sorted(outcomes, key=lambda item: (item.order, item.subdivisions)))

    await record(
        RunEvent(
            run_id=run_id,
            event_type=RunEventType.RUN_COMPLETED,
            ts=finished_at,
            message="run completed",
        )
    )

    return RunRecord(
        run_id=run_id,
        command=command,
        config_hash=config_hash,
        seed=seed,
        started_at=started_at,
        finished_at=finished_at,
        events=tuple(events),
        outcomes=ordered,
        summary=summarize_outcomes(ordered),
    )
