"""Element-specific data of the space-time predictor."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import structlog

from py_poro_ader.config.defaults import QUANTITIES, RESOLVENT_CONDITION_LIMIT
from py_poro_ader.core.basis.operators import ReferenceOperators
from py_poro_ader.core.material import Jacobians
from py_poro_ader.exceptions import SingularOperatorError, ValidationError

log = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class StpOperator:
    """Scaled reference Jacobians, scaled source and per-quantity resolvents.

    ``a_star[j]`` is dt times the flux Jacobian along reference axis j,
    ``e_star`` is dt times the source matrix, ``f`` its diagonal and ``g`` its
    strictly upper part. ``resolvents[p]`` is the inverse of Z - f[p] I.
    """

    a_star: np.ndarray
    e_star: np.ndarray
    f: np.ndarray
    g: np.ndarray
    resolvents: np.ndarray
    ops: ReferenceOperators
    dt: float

    @classmethod
    def from_matrices(
        cls,
        a_star: np.ndarray,
        e_star: np.ndarray,
        ops: ReferenceOperators,
        dt: float = 1.0,
    ) -> StpOperator:
        a_star = np.asarray(a_star, dtype=float)
        e_star = np.asarray(e_star, dtype=float)
        shapes = (a_star.shape, e_star.shape)
        if shapes != ((3, QUANTITIES, QUANTITIES), (QUANTITIES, QUANTITIES)):
            raise ValidationError("predictor matrices must be (3, 13, 13) and (13, 13)")
        if np.any(np.tril(e_star, -1)):
            raise ValidationError("scaled source matrix must be upper triangular")

        f = np.diag(e_star).copy()
        g = np.triu(e_star, 1)
        identity = np.eye(ops.time_modes)
        resolvents = np.empty((QUANTITIES, ops.time_modes, ops.time_modes))
        for p in range(QUANTITIES):
            shifted = ops.Z - f[p] * identity
            condition = np.linalg.cond(shifted)
            if not np.isfinite(condition) or condition > RESOLVENT_CONDITION_LIMIT:
                raise SingularOperatorError(dt=dt, quantity=p, condition=condition)
            resolvents[p] = np.linalg.inv(shifted)

        return cls(a_star=a_star, e_star=e_star, f=f, g=g, resolvents=resolvents, ops=ops, dt=dt)

    @property
    def order(self) -> int:
        return self.ops.degree

    @cached_property
    def g_sources(self) -> tuple[tuple[int, ...], ...]:
        """For each quantity p, the rows o < p with a nonzero coupling g[o, p]."""
        return tuple(
            tuple(int(o) for o in np.flatnonzero(self.g[:, p])) for p in range(QUANTITIES)
        )

    @property
    def payload_bytes(self) -> int:
        """Bytes of operator-specific data: resolvents, A*, B*, C* and nonzeros of E*."""
        return 8 * (self.resolvents.size + self.a_star.size + int(np.count_nonzero(self.e_star)))


def reference_jacobians(jac: Jacobians, inverse_map_gradients: np.ndarray) -> np.ndarray:
    """Chain rule: A_j = sum_d (d xi_j / d x_d) A_d for reference axes j."""
    gradients = np.asarray(inverse_map_gradients, dtype=float)
    return np.einsum("jd,dpq->jpq", gradients, jac.stack)


def build_operator(
    jac: Jacobians,
    inverse_map_gradients: np.ndarray,
    dt: float,
    ops: ReferenceOperators,
) -> StpOperator:
    if not dt > 0 or not np.isfinite(dt):
        raise ValidationError(f"time step must be positive and finite, got {dt}")
    gradients = np.asarray(inverse_map_gradients, dtype=float)
    if gradients.shape != (3, 3) or abs(np.linalg.det(gradients)) == 0.0:
        raise ValidationError("inverse map gradients must form a nonsingular 3x3 matrix")

    operator = StpOperator.from_matrices(
        dt * reference_jacobians(jac, gradients), dt * jac.E, ops, dt=dt
    )
    log.debug(
        "stp_operator_built",
        order=ops.degree,
        dt=dt,
        g_entries=int(np.count_nonzero(operator.g)),
    )
    return operator
