"""Randomised agreement suite: fused predictor against the dense solve and Alg1/Alg2."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import structlog

from py_poro_ader.config.defaults import MAX_DEGREE, MIN_DEGREE, ORACLE_TOLERANCE
from py_poro_ader.core.sampling import random_instance
from py_poro_ader.core.stp.oracle import predict_oracle, system_residual
from py_poro_ader.core.stp.predictor import PredictorVariant, predict, predict_intermediate
from py_poro_ader.exceptions import ValidationError

log = structlog.get_logger()


@dataclass(frozen=True)
class EquivalenceReport:
    order: int
    seed: int
    trials: int
    oracle_deviation: float
    alg1_deviation: float
    alg2_deviation: float
    max_residual: float
    tolerance: float = ORACLE_TOLERANCE

    @property
    def max_deviation(self) -> float:
        return max(self.oracle_deviation, self.alg1_deviation, self.alg2_deviation)

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance and self.max_residual < self.tolerance


def relative_deviation(candidate: np.ndarray, reference: np.ndarray) -> float:
    """Largest per-quantity deviation, each quantity scaled by its own magnitude."""
    reference = np.asarray(reference, dtype=float)
    axes = tuple(range(1, reference.ndim))
    scale = np.max(np.abs(reference), axis=axes)
    scale = np.maximum(scale, 1e-300 + 1e-12 * np.max(scale))
    difference = np.max(np.abs(np.asarray(candidate) - reference), axis=axes)
    return float(np.max(difference / scale))


def run_equivalence_suite(order: int, seed: int, trials: int) -> EquivalenceReport:
    if not MIN_DEGREE <= order <= MAX_DEGREE:
        raise ValidationError(f"order must lie in [{MIN_DEGREE}, {MAX_DEGREE}], got {order}")
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")

    rng = np.random.default_rng(seed)
    oracle = alg1 = alg2 = residual = 0.0
    for trial in range(trials):
        instance = random_instance(rng, order)
        op, q0 = instance.operator, instance.q0
        fused = predict(op, q0)
        reference = predict_oracle(op, q0)
        oracle = max(oracle, relative_deviation(fused, reference))
        alg1 = max(
            alg1,
            relative_deviation(predict_intermediate(op, q0, PredictorVariant.ALG1), reference),
        )
        alg2 = max(
            alg2,
            relative_deviation(predict_intermediate(op, q0, PredictorVariant.ALG2), reference),
        )
        residual = max(residual, system_residual(op, q0, fused))
        log.debug("equivalence_trial", trial=trial, deviation=oracle, residual=residual)

    report = EquivalenceReport(
        order=order,
        seed=seed,
        trials=trials,
        oracle_deviation=oracle,
        alg1_deviation=alg1,
        alg2_deviation=alg2,
        max_residual=residual,
    )
    log.info(
        "equivalence_suite_finished",
        order=order,
        seed=seed,
        trials=trials,
        max_deviation=report.max_deviation,
        passed=report.passed,
    )
    return report
