"""Rich console configuration."""

from rich.console import Console
from rich.theme import Theme

_DEFAULT_THEME = Theme(
    {
        "info": "cyan",
        "warning": "bold yellow",
        "error": "bold red",
        "success": "bold green",
        "debug": "dim",
        "quantity": "magenta",
    }
)


def make_console(**options) -> Console:
    """Create the primary Rich console."""
    return Console(theme=_DEFAULT_THEME, **options)


def make_stderr_console() -> Console:
    """Create a stderr console for diagnostics that must stay off stdout."""
    return Console(stderr=True, theme=_DEFAULT_THEME, highlight=False)
