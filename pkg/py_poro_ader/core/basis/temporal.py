"""Shifted Legendre basis on [0, 1] and the temporal element matrices."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import structlog

from py_poro_ader.config.defaults import MAX_DEGREE, ROUNDOFF_FLUSH
from py_poro_ader.core.basis.quadrature import Domain, quadrature_rule
from py_poro_ader.core.basis.spatial import scaled_jacobi
from py_poro_ader.exceptions import ValidationError

log = structlog.get_logger()


@dataclass(frozen=True)
class TemporalBasis:
    degree: int

    @property
    def count(self) -> int:
        return self.degree + 1

    def tabulate(self, tau) -> tuple[np.ndarray, np.ndarray]:
        """Values and derivatives of chi_s at tau, each shaped (npts, N+1)."""
        tau = np.atleast_1d(np.asarray(tau, dtype=float))
        ones = np.ones_like(tau)
        values = np.empty((tau.size, self.count))
        derivatives = np.empty((tau.size, self.count))
        for s in range(self.count):
            values[:, s], derivatives[:, s], _ = scaled_jacobi(s, 0.0, tau, ones)
        return values, derivatives

    @property
    def norms(self) -> np.ndarray:
        return 1.0 / (2.0 * np.arange(self.count) + 1.0)


@dataclass(frozen=True, eq=False)
class TemporalOperators:
    degree: int
    W: np.ndarray
    w: np.ndarray
    S: np.ndarray
    K_tau: np.ndarray
    Z: np.ndarray
    S_inv_w: np.ndarray
    z_condition: float
    time_integral: np.ndarray


def _flush(matrix: np.ndarray) -> np.ndarray:
    scale = np.max(np.abs(matrix)) if matrix.size else 0.0
    if scale > 0:
        matrix = np.where(np.abs(matrix) < ROUNDOFF_FLUSH * scale, 0.0, matrix)
    return matrix


@lru_cache(maxsize=None)
def build_temporal_operators(degree: int) -> TemporalOperators:
    if not 0 <= degree <= MAX_DEGREE:
        raise ValidationError(f"temporal degree must lie in [0, {MAX_DEGREE}], got {degree}")

    basis = TemporalBasis(degree)
    rule = quadrature_rule(Domain.INTERVAL, 2 * degree)
    values, derivatives = basis.tabulate(rule.points[:, 0])
    end_values, _ = basis.tabulate([1.0])
    start_values, _ = basis.tabulate([0.0])

    weighted = values * rule.weights[:, None]
    S = np.diag(np.diag(weighted.T @ values))
    K_tau = _flush(derivatives.T @ weighted)
    W = np.outer(end_values[0], end_values[0])
    w = start_values[0].copy()

    Z = np.linalg.solve(S, W - K_tau)
    S_inv_w = w / np.diag(S)
    time_integral = _flush(rule.weights @ values)

    z_condition = float(np.linalg.cond(Z))
    log.debug("temporal_operators_built", degree=degree, z_condition=z_condition)
    return TemporalOperators(
        degree=degree,
        W=W,
        w=w,
        S=S,
        K_tau=K_tau,
        Z=Z,
        S_inv_w=S_inv_w,
        z_condition=z_condition,
        time_integral=time_integral,
    )


def evaluate_in_time(coefficients: np.ndarray, tau) -> np.ndarray:
    """Reconstruct sum_s Q[..., s] chi_s(tau); a scalar tau drops the trailing axis."""
    coefficients = np.asarray(coefficients, dtype=float)
    values, _ = TemporalBasis(coefficients.shape[-1] - 1).tabulate(tau)
    result = coefficients @ values.T
    return result[..., 0] if np.ndim(tau) == 0 else result
