from pathlib import Path

import pytest

SMALL_RUN = """\
[run]
order = 1
subdivisions = 2
t_end = 1.0e-5
log_conservation = true

[study]
orders = [1]
subdivisions = [2, 4]
"""


@pytest.fixture
def small_config(tmp_path: Path, config_dir: Path) -> Path:
    material = (config_dir / "convergence.toml").read_text(encoding="utf-8").split("[run]")[0]
    output = tmp_path / "out"
    path = tmp_path / "small.toml"
    path.write_text(
        material + SMALL_RUN + f'\n[output]\ndirectory = "{output.as_posix()}"\n',
        encoding="utf-8",
    )
    return path
