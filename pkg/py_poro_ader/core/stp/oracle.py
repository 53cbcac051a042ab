"""Dense reference solve of the unrolled space-time system.

Unknowns are flattened with the spatial mode slowest, then the quantity, then
the temporal mode.
"""

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve
import structlog

from py_poro_ader.config.defaults import QUANTITIES
from py_poro_ader.core.stp.operator import StpOperator
from py_poro_ader.exceptions import SingularOperatorError

log = structlog.get_logger()


def system_size(op: StpOperator) -> int:
    return QUANTITIES * op.ops.count * op.ops.time_modes


def assemble_system(op: StpOperator) -> np.ndarray:
    ops = op.ops
    mass = np.diag(ops.mass)
    identity = np.eye(QUANTITIES)
    system = np.kron(mass, np.kron(identity, ops.W - ops.K_tau))
    system -= np.kron(mass, np.kron(op.e_star, ops.S))
    for j in range(3):
        system += np.kron(ops.stiffness[j], np.kron(op.a_star[j], ops.S))
    return system


def assemble_rhs(op: StpOperator, q0: np.ndarray) -> np.ndarray:
    ops = op.ops
    rhs = np.einsum("k,r,pk->kpr", ops.mass, ops.w, np.asarray(q0, dtype=float))
    return rhs.reshape(-1)


def flatten_dofs(dofs: np.ndarray) -> np.ndarray:
    """(13, B, N+1) -> system ordering."""
    return np.transpose(dofs, (1, 0, 2)).reshape(-1)


def unflatten_dofs(vector: np.ndarray, modes: int, time_modes: int) -> np.ndarray:
    return np.transpose(vector.reshape(modes, QUANTITIES, time_modes), (1, 0, 2))


def equilibrate(system: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    row = np.max(np.abs(system), axis=1)
    row[row == 0] = 1.0
    row_scale = 1.0 / row
    col = np.max(np.abs(system * row_scale[:, None]), axis=0)
    col[col == 0] = 1.0
    return row_scale, 1.0 / col


def predict_oracle(op: StpOperator, q0: np.ndarray) -> np.ndarray:
    """Solve the full system with an equilibrated partial-pivoting LU."""
    system = assemble_system(op)
    rhs = assemble_rhs(op, q0)
    row_scale, col_scale = equilibrate(system)
    scaled = system * row_scale[:, None] * col_scale[None, :]

    with warnings.catch_warnings():
        warnings.simplefilter("error", LinAlgWarning)
        try:
            factors = lu_factor(scaled)
        except (LinAlgWarning, ValueError) as exc:
            raise SingularOperatorError(dt=op.dt) from exc
    if np.any(np.diag(factors[0]) == 0):
        raise SingularOperatorError(dt=op.dt)

    solution = col_scale * lu_solve(factors, row_scale * rhs)
    log.debug("oracle_solved", unknowns=system.shape[0])
    return unflatten_dofs(solution, op.ops.count, op.ops.time_modes)


def apply_system(op: StpOperator, dofs: np.ndarray) -> np.ndarray:
    """Matrix-free product of the space-time system with dofs (13, B, N+1)."""
    ops = op.ops
    dofs = np.asarray(dofs, dtype=float)
    result = np.einsum("k,rs,pks->pkr", ops.mass, ops.W - ops.K_tau, dofs)
    result -= np.einsum("k,pq,rs,qks->pkr", ops.mass, op.e_star, ops.S, dofs)
    for j in range(3):
        result += np.einsum("kl,pq,rs,qls->pkr", ops.stiffness[j], op.a_star[j], ops.S, dofs)
    return result


def system_residual(op: StpOperator, q0: np.ndarray, dofs: np.ndarray) -> float:
    """max |Y Q - r| / max |r| without forming Y."""
    ops = op.ops
    rhs = np.einsum("k,r,pk->pkr", ops.mass, ops.w, np.asarray(q0, dtype=float))
    scale = np.max(np.abs(rhs))
    if scale == 0:
        return float(np.max(np.abs(apply_system(op, dofs))))
    return float(np.max(np.abs(apply_system(op, dofs) - rhs)) / scale)
