from pathlib import Path

import pytest

from py_poro_ader.core.material import Material
from tests.materials import CONVERGENCE_MATERIAL, UPPER_HALF_SPACE

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


@pytest.fixture
def convergence_material() -> Material:
    return Material.from_parameters(CONVERGENCE_MATERIAL)


@pytest.fixture
def inviscid_material() -> Material:
    return Material.from_parameters(UPPER_HALF_SPACE)


@pytest.fixture
def config_dir() -> Path:
    return CONFIG_DIR
