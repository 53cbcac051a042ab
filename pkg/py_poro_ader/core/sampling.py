"""Seeded random predictor instances for property checks and the oracle suite."""

from dataclasses import dataclass

import numpy as np

from py_poro_ader.config.defaults import DEFAULT_CFL, QUANTITIES
from py_poro_ader.core.basis.operators import build_reference_operators
from py_poro_ader.core.material import Material, random_material
from py_poro_ader.core.stp.operator import StpOperator, build_operator

# Insphere diameter of the unit reference tetrahedron.
REFERENCE_INSPHERE = 1.0 / (1.5 + 0.5 * np.sqrt(3.0))


@dataclass(frozen=True, eq=False)
class PredictorInstance:
    material: Material
    operator: StpOperator
    q0: np.ndarray


def random_map_gradients(rng: np.random.Generator, size: float) -> np.ndarray:
    """Inverse Jacobian of a moderately distorted element of edge ``size``."""
    while True:
        jacobian = size * (np.eye(3) + 0.3 * rng.normal(size=(3, 3)))
        if np.linalg.det(jacobian) > 0 and np.linalg.cond(jacobian) < 10.0:
            return np.linalg.inv(jacobian)


def random_dofs(
    rng: np.random.Generator, material: Material, modes: int, count: int | None = None
) -> np.ndarray:
    """Coefficients with stresses and pressure of impedance scale, velocities of order one."""
    shape = (QUANTITIES, modes) if count is None else (count, QUANTITIES, modes)
    scale = np.ones(QUANTITIES)
    impedance = material.coefficients.rho * material.max_speed
    scale[:6] = impedance
    scale[9] = impedance
    return rng.uniform(-1.0, 1.0, size=shape) * scale[:, None]


def random_instance(
    rng: np.random.Generator,
    order: int,
    *,
    viscous: bool = True,
    cfl_factor: float = DEFAULT_CFL,
) -> PredictorInstance:
    material = Material.from_parameters(random_material(rng, viscous=viscous))
    size = rng.uniform(0.05, 0.5)
    gradients = random_map_gradients(rng, size)
    diameter = REFERENCE_INSPHERE * size
    dt = rng.uniform(0.5, 1.0) * cfl_factor / (2 * order + 1) * diameter / material.max_speed

    ops = build_reference_operators(order)
    operator = build_operator(material.jacobians, gradients, dt, ops)
    return PredictorInstance(
        material=material, operator=operator, q0=random_dofs(rng, material, ops.count)
    )
