"""Flop and storage model of the predictor against a dense LU solve."""

from dataclasses import dataclass

from py_poro_ader.config.defaults import MAX_DEGREE, MIN_DEGREE, QUANTITIES
from py_poro_ader.core.basis.spatial import basis_count
from py_poro_ader.exceptions import ValidationError

BYTES_PER_REAL = 8
BYTES_PER_MB = 2**20


@dataclass(frozen=True)
class CostReport:
    order: int
    unknowns: int
    flops_lu: int
    flops_stp: int
    storage_lu_bytes: int
    storage_stp_bytes: int

    @property
    def reduction(self) -> float:
        return self.flops_lu / self.flops_stp

    @property
    def storage_lu_mb(self) -> float:
        return self.storage_lu_bytes / BYTES_PER_MB

    @property
    def storage_stp_mb(self) -> float:
        return self.storage_stp_bytes / BYTES_PER_MB


def closed_form_flops(order: int, quantities: int = QUANTITIES) -> int:
    modes = basis_count(order)
    t = order + 1
    q = quantities
    per_mode = q * t**2 + 3 * t + 3 * t * q**2 + 3 * t * q * modes
    return 2 * modes * per_mode + 3 * q * modes * t**2


def cost_model(order: int, quantities: int = QUANTITIES) -> CostReport:
    if not MIN_DEGREE <= order <= MAX_DEGREE:
        raise ValidationError(f"order must lie in [{MIN_DEGREE}, {MAX_DEGREE}], got {order}")

    t = order + 1
    unknowns = quantities * t * basis_count(order)
    # LU factors are stored together as one s x s array.
    storage_stp = quantities * t**2 + 3 * quantities**2 + 6
    return CostReport(
        order=order,
        unknowns=unknowns,
        flops_lu=2 * unknowns**2,
        flops_stp=closed_form_flops(order, quantities),
        storage_lu_bytes=BYTES_PER_REAL * unknowns**2,
        storage_stp_bytes=BYTES_PER_REAL * storage_stp,
    )
