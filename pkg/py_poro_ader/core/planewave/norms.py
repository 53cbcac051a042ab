"""Discrete L1, L2 and Linf error norms against an analytic solution."""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from py_poro_ader.config.defaults import QUANTITIES
from py_poro_ader.core.basis.operators import build_reference_operators
from py_poro_ader.core.basis.quadrature import Domain, quadrature_rule
from py_poro_ader.core.mesh.cube import Mesh
from py_poro_ader.core.planewave.modes import PlaneWaveSolution, evaluate


class Norm(str, Enum):
    L1 = "L1"
    L2 = "L2"
    LINF = "Linf"


@dataclass(frozen=True, eq=False)
class ErrorReport:
    l1: np.ndarray
    l2: np.ndarray
    linf: np.ndarray
    volume: float

    def value(self, norm: Norm | str, quantity: int) -> float:
        norm = Norm(norm)
        table = {Norm.L1: self.l1, Norm.L2: self.l2, Norm.LINF: self.linf}[norm]
        return float(table[quantity])

    def consistent(self, slack: float = 1e-12) -> bool:
        """L1 <= sqrt|Omega| L2 <= |Omega| Linf for every quantity."""
        root = np.sqrt(self.volume)
        first = np.all(self.l1 <= root * self.l2 * (1.0 + slack))
        second = np.all(root * self.l2 <= self.volume * self.linf * (1.0 + slack))
        return bool(first and second)


def error_norms(
    mesh: Mesh,
    dofs: np.ndarray,
    solution: PlaneWaveSolution,
    t: float,
    order: int,
) -> ErrorReport:
    ops = build_reference_operators(order)
    rule = quadrature_rule(Domain.TET, 2 * order + 2)
    values, _ = ops.basis.tabulate(rule.points)

    numeric = np.einsum("epl,ql->eqp", dofs, values)
    points = mesh.physical_points(rule.points)
    exact = evaluate(solution, points.reshape(-1, 3), t)
    difference = numeric - exact.reshape(mesh.element_count, rule.size, QUANTITIES)

    weights = mesh.determinants[:, None] * rule.weights[None, :]
    l1 = np.einsum("eq,eqp->p", weights, np.abs(difference))
    l2 = np.sqrt(np.einsum("eq,eqp->p", weights, difference**2))
    linf = np.max(np.abs(difference), axis=(0, 1))
    return ErrorReport(l1=l1, l2=l2, linf=linf, volume=float(weights.sum()))
