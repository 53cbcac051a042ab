import math

import numpy as np
import pytest
from scipy.linalg import expm

from py_poro_ader.config.defaults import QUANTITIES, QUANTITY_NAMES
from py_poro_ader.core.basis.operators import build_reference_operators
from py_poro_ader.core.basis.spatial import basis_count
from py_poro_ader.core.basis.temporal import evaluate_in_time
from py_poro_ader.core.material import Material
from py_poro_ader.core.sampling import random_instance
from py_poro_ader.core.stp.cost import closed_form_flops
from py_poro_ader.core.stp.equivalence import relative_deviation
from py_poro_ader.core.stp.operator import StpOperator
from py_poro_ader.core.stp.predictor import (
    FlopCounter,
    PredictorVariant,
    predict,
    predict_batch,
    predict_intermediate,
    time_integrate,
)
from py_poro_ader.exceptions import NonFiniteStateError, ValidationError
from tests.materials import CONVERGENCE_MATERIAL


def _pure_source_operator(order: int, quantity: int, rate: float) -> StpOperator:
    e_star = np.zeros((QUANTITIES, QUANTITIES))
    e_star[quantity, quantity] = rate
    return StpOperator.from_matrices(
        np.zeros((3, QUANTITIES, QUANTITIES)), e_star, build_reference_operators(order)
    )


def test_pure_source_reproduces_exponential_decay() -> None:
    quantity = QUANTITY_NAMES.index("p")
    op = _pure_source_operator(5, quantity, -2.0)
    q0 = np.zeros((QUANTITIES, op.ops.count))
    q0[quantity, 0] = 1.0

    dofs = predict(op, q0)

    assert evaluate_in_time(dofs[quantity, 0], 1.0) == pytest.approx(math.exp(-2.0), abs=1e-6)


def test_zero_operators_keep_state_constant_in_time() -> None:
    op = StpOperator.from_matrices(
        np.zeros((3, QUANTITIES, QUANTITIES)),
        np.zeros((QUANTITIES, QUANTITIES)),
        build_reference_operators(2),
    )
    q0 = np.random.default_rng(0).normal(size=(QUANTITIES, op.ops.count))

    dofs = predict(op, q0)

    np.testing.assert_allclose(dofs[..., 0], q0, atol=1e-14)
    np.testing.assert_allclose(dofs[..., 1:], 0.0, atol=1e-14)


@pytest.mark.parametrize("order", [1, 2, 3])
@pytest.mark.parametrize("seed", [11, 12])
def test_unfused_variants_agree_with_fused_predictor(order: int, seed: int) -> None:
    instance = random_instance(np.random.default_rng(seed), order)
    fused = predict(instance.operator, instance.q0)

    for variant in PredictorVariant:
        other = predict_intermediate(instance.operator, instance.q0, variant)
        assert relative_deviation(other, fused) < 1e-11


def test_batch_matches_single_element_calls() -> None:
    rng = np.random.default_rng(5)
    instance = random_instance(rng, 2)
    q0s = np.stack([instance.q0, 2.0 * instance.q0, -instance.q0])

    batch = predict_batch(instance.operator, q0s)

    for index, q0 in enumerate(q0s):
        np.testing.assert_allclose(batch[index], predict(instance.operator, q0), rtol=1e-13)


@pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
def test_flop_counter_matches_closed_form_without_constant_block_updates(order: int) -> None:
    instance = random_instance(np.random.default_rng(order), order)
    counter = FlopCounter()
    modes = basis_count(order)
    t = order + 1

    predict(instance.operator, instance.q0, counter=counter)

    skipped = 3 * (QUANTITIES * modes * t + 2 * t * QUANTITIES**2 + 2 * t * QUANTITIES * modes)
    assert counter.flops == closed_form_flops(order) - skipped
    assert counter.flops <= closed_form_flops(order)
    assert counter.g_updates == 3 * t


def test_time_integrate_takes_mean_coefficient() -> None:
    dofs = np.random.default_rng(1).normal(size=(QUANTITIES, 4, 3))

    np.testing.assert_allclose(time_integrate(dofs), dofs[..., 0], atol=1e-15)


def test_non_finite_input_names_the_element() -> None:
    instance = random_instance(np.random.default_rng(2), 1)
    q0s = np.stack([instance.q0, instance.q0])
    q0s[1, 3, 0] = np.nan

    with pytest.raises(NonFiniteStateError) as excinfo:
        predict_batch(instance.operator, q0s, element_ids=np.array([40, 41]))

    assert excinfo.value.element == 41


def test_wrong_shape_is_rejected() -> None:
    instance = random_instance(np.random.default_rng(3), 1)

    with pytest.raises(ValidationError):
        predict(instance.operator, np.zeros((QUANTITIES, 3)))


@pytest.mark.parametrize("order", [1, 2, 3])
def test_inviscid_operator_skips_source_coupling_updates(order: int) -> None:
    instance = random_instance(np.random.default_rng(order), order, viscous=False)
    counter = FlopCounter()

    predict_intermediate(instance.operator, instance.q0, PredictorVariant.ALG2, counter=counter)

    assert not np.any(instance.operator.g)
    assert counter.g_updates == 0


def test_viscous_operator_counts_source_coupling_updates() -> None:
    instance = random_instance(np.random.default_rng(7), 2)
    counter = FlopCounter()

    predict_intermediate(instance.operator, instance.q0, PredictorVariant.ALG2, counter=counter)

    assert counter.g_updates == 3 * instance.operator.ops.count


def _source_only_error(order: int, source: np.ndarray, dt: float, q0: np.ndarray) -> float:
    ops = build_reference_operators(order)
    op = StpOperator.from_matrices(np.zeros((3, QUANTITIES, QUANTITIES)), dt * source, ops)
    state = np.zeros((QUANTITIES, ops.count))
    state[:, 0] = q0

    dofs = predict(op, state)

    taus = np.linspace(0.0, 1.0, 21)
    predicted = evaluate_in_time(dofs[:, 0], taus)
    exact = np.stack([expm(dt * tau * source) @ q0 for tau in taus], axis=1)
    return float(np.abs(predicted - exact).max())


@pytest.mark.parametrize("order", [1, 2, 3])
def test_predictor_converges_under_time_step_refinement(order: int) -> None:
    source = Material.from_parameters(CONVERGENCE_MATERIAL).jacobians.E
    dt = 0.4 / np.abs(np.diag(source)).max()
    q0 = np.random.default_rng(order).normal(size=QUANTITIES)

    coarse = _source_only_error(order, source, dt, q0)
    fine = _source_only_error(order, source, dt / 2, q0)

    assert fine > 0.0
    assert math.log2(coarse / fine) >= order + 0.5
