"""Rich Live study renderer driven by RunEvents."""

from __future__ import annotations

from collections import deque

from rich.console import Group
from rich.live import Live
from rich.panel import Panel
from rich.table import Table

from py_poro_ader.core.models import RunEvent, RunEventType

_STATE_FOR_EVENT = {
    RunEventType.CELL_QUEUED: "queued",
    RunEventType.CELL_STARTED: "running",
    RunEventType.CELL_COMPLETED: "completed",
    RunEventType.CELL_FAILED: "failed",
}


def summarize_live_state(events: tuple[RunEvent, ...]) -> dict[str, int]:
    """Summarize cell progress from the latest event per (order, subdivisions)."""
    latest: dict[tuple[int, int], RunEvent] = {}
    for event in events:
        if event.order is not None and event.subdivisions is not None:
            latest[(event.order, event.subdivisions)] = event

    summary = {"total": len(latest), "queued": 0, "running": 0, "completed": 0, "failed": 0}
    for event in latest.values():
        state = _STATE_FOR_EVENT.get(event.event_type)
        if state is not None:
            summary[state] += 1
    return summary


class LiveStudyRenderer:
    def __init__(self, console, max_events: int = 10):
        self._console = console
        self._events: deque[RunEvent] = deque(maxlen=max_events)
        self._all_events: list[RunEvent] = []
        self._live: Live | None = None

    def __enter__(self):
        self._live = Live(console=self._console, refresh_per_second=4, transient=True)
        self._live.__enter__()
        self._live.update(self._render())
        return self

    def __exit__(self, exc_type, exc, tb):
        if self._live is not None:
            self._live.__exit__(exc_type, exc, tb)

    def push(self, event: RunEvent) -> None:
        self._events.append(event)
        self._all_events.append(event)
        if self._live is not None:
            self._live.update(self._render())

    def _build_progress_table(self, summary: dict[str, int]) -> Table:
        table = Table.grid(expand=True)
        table.add_column(justify="left")
        table.add_column(justify="right")
        for key in ("total", "queued", "running", "completed", "failed"):
            table.add_row(key, str(summary[key]))
        return table

    def _build_recent_events_table(self) -> Table:
        table = Table(title="RECENT EVENTS")
        table.add_column("Time", width=10)
        table.add_column("Cell", width=10)
        table.add_column("Event", width=16)
        table.add_column("Detail")
        for event in self._events:
            cell = "-" if event.order is None else f"N={event.order} n={event.subdivisions}"
            table.add_row(
                event.ts.split("T")[-1][:8],
                cell,
                event.event_type.value,
                event.message or "-",
            )
        return table

    def _render(self):
        summary = summarize_live_state(tuple(self._all_events))
        return Group(
            Panel(self._build_progress_table(summary), title="PROGRESS", border_style="cyan"),
            Panel(self._build_recent_events_table(), border_style="white"),
        )


__all__ = ["LiveStudyRenderer", "summarize_live_state"]
