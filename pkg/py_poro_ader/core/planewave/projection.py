"""L2 projection of analytic fields onto the element bases."""

import numpy as np

from py_poro_ader.config.defaults import QUANTITIES
from py_poro_ader.core.basis.operators import build_reference_operators
from py_poro_ader.core.basis.quadrature import Domain, quadrature_rule
from py_poro_ader.core.mesh.cube import Mesh
from py_poro_ader.core.planewave.modes import PlaneWaveSolution, evaluate


def project_initial_condition(
    mesh: Mesh, solution: PlaneWaveSolution, order: int, t: float = 0.0
) -> np.ndarray:
    """Coefficients (nE, 13, B) of the plane wave at time t."""
    ops = build_reference_operators(order)
    rule = quadrature_rule(Domain.TET, 2 * order + 2)
    values, _ = ops.basis.tabulate(rule.points)

    points = mesh.physical_points(rule.points)
    field = evaluate(solution, points.reshape(-1, 3), t)
    field = field.reshape(mesh.element_count, rule.size, QUANTITIES)

    # The affine Jacobian cancels between the load vector and the mass matrix.
    weighted = values * rule.weights[:, None]
    return np.einsum("eqp,ql->epl", field, weighted) / ops.mass
