"""Wall-clock comparison of the fused predictor against reused dense LU solves."""

from dataclasses import dataclass
import time

import numpy as np
from scipy.linalg import lu_factor, lu_solve
import structlog

from py_poro_ader.core.sampling import random_dofs, random_instance
from py_poro_ader.core.stp.oracle import assemble_rhs, assemble_system, equilibrate
from py_poro_ader.core.stp.predictor import predict_batch

log = structlog.get_logger()


@dataclass(frozen=True)
class BenchmarkResult:
    order: int
    elements: int
    predictor_seconds: float
    lu_seconds: float

    @property
    def speedup(self) -> float:
        if self.predictor_seconds <= 0:
            return float("inf")
        return self.lu_seconds / self.predictor_seconds


def benchmark_predictor(order: int, elements: int, seed: int = 0) -> BenchmarkResult:
    """Time both paths on one operator; the LU factorisation itself is not timed."""
    rng = np.random.default_rng(seed)
    instance = random_instance(rng, order)
    op = instance.operator
    q0s = random_dofs(rng, instance.material, op.ops.count, count=elements)

    system = assemble_system(op)
    row_scale, col_scale = equilibrate(system)
    factors = lu_factor(system * row_scale[:, None] * col_scale[None, :])

    start = time.perf_counter()
    predict_batch(op, q0s)
    predictor_seconds = time.perf_counter() - start

    start = time.perf_counter()
    for q0 in q0s:
        _ = col_scale * lu_solve(factors, row_scale * assemble_rhs(op, q0))
    lu_seconds = time.perf_counter() - start

    result = BenchmarkResult(
        order=order,
        elements=elements,
        predictor_seconds=predictor_seconds,
        lu_seconds=lu_seconds,
    )
    log.info("predictor_benchmarked", order=order, elements=elements, speedup=result.speedup)
    return result
