"""Collapsed-coordinate Gauss-Jacobi rules on the reference simplices."""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from py_poro_ader.config.defaults import MAX_QUADRATURE_EXACTNESS
from py_poro_ader.exceptions import ValidationError


class Domain(str, Enum):
    INTERVAL = "interval"
    TRIANGLE = "triangle"
    TET = "tet"


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    points: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.weights.size


def _gauss_jacobi_unit(count: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes on [0, 1] for the weight (1 - x)^alpha."""
    nodes, weights = roots_jacobi(count, alpha, 0.0)
    return 0.5 * (nodes + 1.0), weights / 2.0 ** (alpha + 1.0)


@lru_cache(maxsize=None)
def quadrature_rule(domain: Domain | str, exactness: int) -> QuadratureRule:
    """Rule integrating every polynomial of total degree <= exactness exactly."""
    domain = Domain(domain)
    if exactness < 0 or exactness > MAX_QUADRATURE_EXACTNESS:
        raise ValidationError(
            f"quadrature exactness must lie in [0, {MAX_QUADRATURE_EXACTNESS}], got {exactness}"
        )

    count = exactness // 2 + 1
    a, wa = _gauss_jacobi_unit(count, 0.0)
    if domain is Domain.INTERVAL:
        return QuadratureRule(points=a[:, None], weights=wa)

    b, wb = _gauss_jacobi_unit(count, 1.0)
    if domain is Domain.TRIANGLE:
        A, B = np.meshgrid(a, b, indexing="ij")
        points = np.stack((A * (1.0 - B), B), axis=-1).reshape(-1, 2)
        weights = np.outer(wa, wb).reshape(-1)
        return QuadratureRule(points=points, weights=weights)

    c, wc = _gauss_jacobi_unit(count, 2.0)
    A, B, C = np.meshgrid(a, b, c, indexing="ij")
    points = np.stack(
        (A * (1.0 - B) * (1.0 - C), B * (1.0 - C), C),
        axis=-1,
    ).reshape(-1, 3)
    weights = np.einsum("i,j,k->ijk", wa, wb, wc).reshape(-1)
    return QuadratureRule(points=points, weights=weights)
