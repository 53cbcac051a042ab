"""CLI entrypoint."""

from collections.abc import Sequence

import click

from .cli.app import app

PROG_NAME = "py-poro-ader"


def dispatch(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code instead of exiting the process."""
    try:
        result = app(
            args=list(argv) if argv is not None else None,
            prog_name=PROG_NAME,
            standalone_mode=False,
        )
    except click.exceptions.UsageError as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        return 1
    return result if isinstance(result, int) else 0


def main() -> None:
    raise SystemExit(dispatch())
