"""Wave speeds of the configured material."""

from typing import Annotated

import numpy as np
import typer

from py_poro_ader.cli.common import ConfigOption, command_errors, load_config
from py_poro_ader.core.material import Material, one_dimensional_p_speeds, wave_speeds
from py_poro_ader.exceptions import ValidationError
from py_poro_ader.ui.console import make_console
from py_poro_ader.ui.report_view import render_speeds


def speeds_command(
    config: ConfigOption,
    direction: Annotated[
        tuple[float, float, float],
        typer.Option("--direction", "-d", help="Propagation direction, normalised before use"),
    ] = (1.0, 0.0, 0.0),
) -> None:
    """Print fast P, shear and slow P speeds (m/s, one decimal)."""
    console = make_console()
    with command_errors("speeds"):
        loaded = load_config(config)
        vector = np.asarray(direction, dtype=float)
        length = np.linalg.norm(vector)
        if not length > 0:
            raise ValidationError("direction must be a nonzero vector")
        material = Material.from_parameters(loaded.material)
        speeds = wave_speeds(material.jacobians, vector / length)
        closed_form = one_dimensional_p_speeds(loaded.material)
        render_speeds(console, loaded.material, speeds, direction, closed_form)
