"""Shared run and study models."""

from dataclasses import dataclass
from enum import Enum


class CellStatus(str, Enum):
    COMPLETED = "completed"
    FAILED = "failed"


class RunEventType(str, Enum):
    RUN_STARTED = "run_started"
    CELL_QUEUED = "cell_queued"
    CELL_STARTED = "cell_started"
    CELL_COMPLETED = "cell_completed"
    CELL_FAILED = "cell_failed"
    RUN_COMPLETED = "run_completed"


@dataclass(frozen=True)
class ErrorEntry:
    quantity: str
    norm: str
    error: float


@dataclass(frozen=True)
class CellOutcome:
    """One (order, subdivisions) simulation with its error norms at t_end."""

    order: int
    subdivisions: int
    h: float
    status: CellStatus
    steps: int = 0
    dt: float = 0.0
    seconds: float = 0.0
    errors: tuple[ErrorEntry, ...] = ()
    max_residual: float | None = None
    failure: str | None = None


@dataclass(frozen=True)
class RunEvent:
    run_id: str
    event_type: RunEventType
    ts: str
    order: int | None = None
    subdivisions: int | None = None
    message: str | None = None


@dataclass(frozen=True)
class RunSummary:
    cells: int
    completed: int
    failed: int
    steps: int


@dataclass(frozen=True)
class RunRecord:
    run_id: str
    command: str
    config_hash: str
    seed: int
    started_at: str
    finished_at: str | None
    events: tuple[RunEvent, ...]
    outcomes: tuple[CellOutcome, ...]
    summary: RunSummary


@dataclass(frozen=True)
class StudyRow:
    order: int
    subdivisions: int
    h: float
    quantity: str
    norm: str
    error: float
    observed_order: float | None
