"""Filesystem locations for run journals and exported tables."""

from dataclasses import dataclass
import os
from pathlib import Path

try:
    from platformdirs import PlatformDirs
except ImportError:  # pragma: no cover - fallback for offline/dev environments
    PlatformDirs = None


APP_NAME = "py-poro-ader"
OUTPUT_DIR_ENV = "PY_PORO_ADER_OUTPUT_DIR"


@dataclass(frozen=True)
class OutputPaths:
    output_dir: Path
    runs_dir: Path
    tables_dir: Path


def build_output_paths(base_dir: Path | None = None) -> OutputPaths:
    root = base_dir or _default_output_dir()
    return OutputPaths(
        output_dir=root,
        runs_dir=root / "runs",
        tables_dir=root / "tables",
    )


def get_output_paths(base_dir: Path | None = None) -> OutputPaths:
    paths = build_output_paths(base_dir)
    for directory in (paths.output_dir, paths.runs_dir, paths.tables_dir):
        directory.mkdir(parents=True, exist_ok=True)
    return paths


def _default_output_dir() -> Path:
    env_override = os.environ.get(OUTPUT_DIR_ENV)
    if env_override:
        return Path(env_override).expanduser()

    if PlatformDirs is not None:
        return Path(PlatformDirs(appname=APP_NAME, appauthor=False).user_state_dir)

    return Path.home() / ".local" / "state" / APP_NAME
