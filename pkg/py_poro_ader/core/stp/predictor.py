"""Block-wise back-substitution for the space-time predictor.

All three variants solve the same element-local system

    sum_s Z[u, s] Q[p, m, s] - sum_q E*[p, q] Q[q, m, u]
        + sum_j sum_l A*_j[p, q] Khat_j[m, l] Q[q, l, u] = (S^-1 w)[u] Q0[p, m]

by exploiting that Khat_j only couples a mode to modes of strictly higher degree
and that E* is upper triangular.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from py_poro_ader.config.defaults import QUANTITIES
from py_poro_ader.core.basis.temporal import build_temporal_operators
from py_poro_ader.core.stp.operator import StpOperator
from py_poro_ader.exceptions import NonFiniteStateError, ValidationError


class PredictorVariant(str, Enum):
    ALG1 = "alg1"
    ALG2 = "alg2"


@dataclass
class FlopCounter:
    """Per-call tally of the dense products in the fused schedule, per element."""

    flops: int = 0
    g_updates: int = 0

    def add(self, count: int) -> None:
        self.flops += int(count)


def _check_input(op: StpOperator, q0: np.ndarray, element_ids=None) -> np.ndarray:
    q0 = np.asarray(q0, dtype=float)
    expected = (QUANTITIES, op.ops.count)
    if q0.shape[-2:] != expected:
        raise ValidationError(f"initial coefficients must end in shape {expected}, got {q0.shape}")
    if not np.all(np.isfinite(q0)):
        flat = q0.reshape(-1, *expected) if q0.ndim > 2 else q0[None]
        bad = int(np.flatnonzero(~np.isfinite(flat).all(axis=(1, 2)))[0])
        element = int(element_ids[bad]) if element_ids is not None else bad
        raise NonFiniteStateError(element=element)
    return q0


def predict_batch(
    op: StpOperator,
    q0: np.ndarray,
    counter: FlopCounter | None = None,
    element_ids=None,
) -> np.ndarray:
    """Fused predictor over a leading element axis: (E, 13, B) -> (E, 13, B, N+1)."""
    q0 = _check_input(op, q0, element_ids)
    ops = op.ops
    modes = ops.count
    time_modes = ops.time_modes

    rhs = q0[..., None] * ops.S_inv_w
    dofs = np.zeros_like(rhs)
    for degree in range(ops.degree, -1, -1):
        block = ops.block(degree)
        size = block.stop - block.start

        for p in range(QUANTITIES - 1, -1, -1):
            dofs[:, p, block] = rhs[:, p, block] @ op.resolvents[p].T
            if counter is not None:
                counter.add(2 * size * time_modes**2)
            for o in op.g_sources[p]:
                rhs[:, o, block] += op.g[o, p] * dofs[:, p, block]
                if counter is not None:
                    counter.add(2 * size * time_modes)
                    counter.g_updates += 1

        if degree == 0:
            continue
        lower = slice(0, block.start)
        for j in range(3):
            flux = np.einsum("pq,eqlu->eplu", op.a_star[j], dofs[:, :, block])
            rhs[:, :, lower] -= np.einsum(
                "kl,eplu->epku", ops.stiffness_hat[j, lower, block], flux
            )
            if counter is not None:
                counter.add(QUANTITIES * modes * time_modes)
                counter.add(2 * time_modes * QUANTITIES**2 * size)
                counter.add(2 * time_modes * QUANTITIES * size * modes)
    return dofs


def predict(op: StpOperator, q0: np.ndarray, counter: FlopCounter | None = None) -> np.ndarray:
    """Space-time coefficients (13, B, N+1) for one element."""
    q0 = np.asarray(q0, dtype=float)
    return predict_batch(op, q0[None], counter=counter)[0]


def _predict_alg1(op: StpOperator, q0: np.ndarray) -> np.ndarray:
    ops = op.ops
    time_modes = ops.time_modes
    system = np.kron(np.eye(QUANTITIES), ops.Z) - np.kron(op.e_star, np.eye(time_modes))
    factors = lu_factor(system)

    dofs = np.zeros((QUANTITIES, ops.count, time_modes))
    for m in range(ops.count - 1, -1, -1):
        rhs = q0[:, m, None] * ops.S_inv_w
        higher = slice(m + 1, ops.count)
        for j in range(3):
            coupled = np.einsum("l,qlu->qu", ops.stiffness_hat[j, m, higher], dofs[:, higher])
            rhs -= op.a_star[j] @ coupled
        dofs[:, m] = lu_solve(factors, rhs.reshape(-1)).reshape(QUANTITIES, time_modes)
    return dofs


def _predict_alg2(
    op: StpOperator, q0: np.ndarray, counter: FlopCounter | None = None
) -> np.ndarray:
    ops = op.ops
    rhs = q0[..., None] * ops.S_inv_w
    dofs = np.zeros_like(rhs)
    for m in range(ops.count - 1, -1, -1):
        for p in range(QUANTITIES - 1, -1, -1):
            dofs[p, m] = op.resolvents[p] @ rhs[p, m]
            for o in op.g_sources[p]:
                rhs[o, m] += op.g[o, p] * dofs[p, m]
                if counter is not None:
                    counter.g_updates += 1
        if m == 0:
            continue
        for j in range(3):
            rhs[:, :m] -= np.einsum(
                "n,pu->pnu", ops.stiffness_hat[j, :m, m], op.a_star[j] @ dofs[:, m]
            )
    return dofs


def predict_intermediate(
    op: StpOperator,
    q0: np.ndarray,
    variant: PredictorVariant | str,
    counter: FlopCounter | None = None,
) -> np.ndarray:
    """Unfused per-mode algorithms kept for cross-validation of ``predict``.

    Only ALG2 reports to ``counter``, and only its source-coupling updates.
    """
    q0 = _check_input(op, q0)
    variant = PredictorVariant(variant)
    if variant is PredictorVariant.ALG1:
        return _predict_alg1(op, q0)
    return _predict_alg2(op, q0, counter)


def time_integrate(dofs: np.ndarray) -> np.ndarray:
    """Average over the unit time interval: (..., 13, B, N+1) -> (..., 13, B)."""
    dofs = np.asarray(dofs, dtype=float)
    weights = build_temporal_operators(dofs.shape[-1] - 1).time_integral
    return dofs @ weights
