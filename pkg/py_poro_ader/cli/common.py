"""Shared option types and error-to-exit-code handling for commands."""

from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated

import structlog
import typer

from py_poro_ader.config.loader import Config, parse_config
from py_poro_ader.exceptions import NumericalError, ValidationError
from py_poro_ader.state.paths import OutputPaths, get_output_paths
from py_poro_ader.ui.console import make_stderr_console

log = structlog.get_logger()

EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2

ConfigOption = Annotated[
    Path,
    typer.Option("--config", "-c", help="TOML run configuration", dir_okay=False),
]


@contextmanager
def command_errors(command: str) -> Iterator[None]:
    """Translate library errors into a one-line diagnostic and an exit code."""
    try:
        yield
    except ValidationError as exc:
        log.debug("command_rejected", command=command, error=str(exc))
        make_stderr_console().print(f"[error]{command} failed:[/] {exc}")
        raise typer.Exit(code=EXIT_VALIDATION) from exc
    except NumericalError as exc:
        log.debug("command_numerical_failure", command=command, error=str(exc))
        make_stderr_console().print(f"[error]{command} failed:[/] {exc}")
        raise typer.Exit(code=EXIT_NUMERICAL) from exc


def load_config(path: Path) -> Config:
    config = parse_config(path)
    log.debug("config_loaded", path=str(path))
    return config


def output_paths_for(config: Config | None = None) -> OutputPaths:
    directory = config.output.directory if config is not None else None
    return get_output_paths(Path(directory).expanduser() if directory else None)
