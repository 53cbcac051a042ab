"""Configuration echo."""

import typer

from py_poro_ader.cli.common import ConfigOption, command_errors, load_config
from py_poro_ader.config.loader import dump_config


def dump_config_command(config: ConfigOption) -> None:
    """Print the parsed configuration, defaults filled in, as TOML."""
    with command_errors("dump-config"):
        loaded = load_config(config)
    typer.echo(dump_config(loaded), nl=False)
