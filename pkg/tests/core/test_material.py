from dataclasses import replace
import math

import numpy as np
import pytest

from py_poro_ader.core.material import (
    FLUID_VELOCITY,
    PRESSURE,
    SOLID_VELOCITY,
    STRESS,
    Material,
    assemble_jacobians,
    constitutive_matrix,
    derive_coefficients,
    one_dimensional_p_speeds,
    random_material,
    wave_speeds,
)
from py_poro_ader.exceptions import MaterialError, ValidationError
from tests.materials import (
    CONVERGENCE_MATERIAL,
    HOMOGENEOUS_MATERIAL,
    LOWER_HALF_SPACE,
    UPPER_HALF_SPACE,
)


def test_derived_coefficients_of_convergence_material() -> None:
    coeff = derive_coefficients(CONVERGENCE_MATERIAL)

    assert coeff.K_M == pytest.approx(1.2e10 + 2.0 / 3.0 * 1.0e10)
    assert coeff.alpha == pytest.approx(1.0 - coeff.K_M / 4.0e10)
    assert coeff.rho == pytest.approx(0.2 * 1.04e3 + 0.8 * 2.5e3)
    denominator = (1.0 - coeff.K_M / 4.0e10) - 0.2 * (1.0 - 4.0e10 / 2.5e9)
    assert coeff.M == pytest.approx(4.0e10 / denominator)


def test_characteristic_frequency_of_homogeneous_material() -> None:
    coeff = derive_coefficients(HOMOGENEOUS_MATERIAL)

    assert coeff.f_c == pytest.approx(51011.0, rel=1e-4)


def test_inviscid_material_has_infinite_characteristic_frequency() -> None:
    assert math.isinf(derive_coefficients(UPPER_HALF_SPACE).f_c)


def test_constitutive_matrix_is_symmetric() -> None:
    matrix = constitutive_matrix(CONVERGENCE_MATERIAL)

    np.testing.assert_allclose(matrix, matrix.T)


def test_source_matrix_vanishes_without_viscosity() -> None:
    jac = assemble_jacobians(UPPER_HALF_SPACE)

    assert not np.any(jac.E)


def test_source_matrix_is_upper_triangular_and_couples_fluid_velocity() -> None:
    jac = assemble_jacobians(CONVERGENCE_MATERIAL)

    assert np.allclose(np.tril(jac.E, -1), 0.0)
    nonzero = {(int(r), int(c)) for r, c in zip(*np.nonzero(jac.E), strict=True)}
    expected = {(SOLID_VELOCITY[i], FLUID_VELOCITY[i]) for i in range(3)}
    expected |= {(FLUID_VELOCITY[i], FLUID_VELOCITY[i]) for i in range(3)}
    assert nonzero == expected


def test_half_space_fast_p_speeds() -> None:
    upper = Material.from_parameters(UPPER_HALF_SPACE).speeds
    lower = Material.from_parameters(LOWER_HALF_SPACE).speeds

    assert upper.fast_p == pytest.approx(4246.85, abs=0.05)
    assert lower.fast_p == pytest.approx(2480.66, abs=0.05)


def test_speeds_are_ordered_and_positive(convergence_material) -> None:
    speeds = convergence_material.speeds

    assert speeds.fast_p > speeds.shear > speeds.slow_p > 0.0
    assert convergence_material.max_speed == speeds.fast_p


def test_shear_speed_matches_closed_form() -> None:
    params = UPPER_HALF_SPACE
    coeff = derive_coefficients(params)
    effective = coeff.rho - params.phi * params.rho_F / params.T

    speeds = Material.from_parameters(params).speeds

    assert speeds.shear == pytest.approx(math.sqrt(params.mu_M / effective), rel=1e-9)


def test_p_speeds_match_dispersion_relation(convergence_material) -> None:
    fast, slow = one_dimensional_p_speeds(CONVERGENCE_MATERIAL)

    # About 4021.1 m/s under this assembly, not the 2715.6 m/s sometimes quoted
    # for these inputs. H >= lambda + 2 mu puts the fast speed above 3800 m/s.
    assert fast == pytest.approx(4021.1, abs=0.5)

    assert convergence_material.speeds.fast_p == pytest.approx(fast, rel=1e-9)
    assert convergence_material.speeds.slow_p == pytest.approx(slow, rel=1e-9)


def test_speeds_are_isotropic(convergence_material) -> None:
    jac = convergence_material.jacobians
    along_x = wave_speeds(jac, (1.0, 0.0, 0.0)).as_tuple()
    along_z = wave_speeds(jac, (0.0, 0.0, 1.0)).as_tuple()
    diagonal = wave_speeds(jac, np.ones(3) / math.sqrt(3.0)).as_tuple()

    np.testing.assert_allclose(along_x, along_z, rtol=1e-9)
    np.testing.assert_allclose(along_x, diagonal, rtol=1e-9)


def test_normal_jacobian_spectrum_is_symmetric(convergence_material) -> None:
    eigenvalues = np.sort(np.linalg.eigvals(convergence_material.jacobians.A).real)
    scale = np.max(np.abs(eigenvalues))

    np.testing.assert_allclose(eigenvalues, -eigenvalues[::-1], atol=1e-8 * scale)
    assert np.sum(np.abs(eigenvalues) < 1e-6 * scale) == 5


def test_scaling_moduli_scales_squared_speeds() -> None:
    base = Material.from_parameters(CONVERGENCE_MATERIAL).speeds.as_tuple()
    scaled = Material.from_parameters(CONVERGENCE_MATERIAL.with_scaled_moduli(2.5)).speeds

    np.testing.assert_allclose(np.square(scaled.as_tuple()), 2.5 * np.square(base), rtol=1e-9)


def test_wave_speeds_rejects_non_unit_direction(convergence_material) -> None:
    with pytest.raises(ValidationError):
        wave_speeds(convergence_material.jacobians, (1.0, 1.0, 0.0))


@pytest.mark.parametrize(
    ("overrides", "key"),
    [
        ({"phi": 1.2}, "phi"),
        ({"K_S": -1.0}, "K_S"),
        ({"nu": -1e-3}, "nu"),
        ({"rho_F": float("nan")}, "rho_F"),
    ],
)
def test_invalid_parameters_name_the_key(overrides, key) -> None:
    with pytest.raises(MaterialError) as excinfo:
        derive_coefficients(replace(CONVERGENCE_MATERIAL, **overrides))

    assert excinfo.value.key == key


def test_non_physical_coupling_modulus_is_rejected() -> None:
    params = replace(CONVERGENCE_MATERIAL, lambda_M=3.0e10, mu_M=1.2e10, K_F=1.0e12)

    with pytest.raises(MaterialError) as excinfo:
        derive_coefficients(params)

    assert "K_M/K_S" in excinfo.value.key


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_random_materials_have_real_speeds(seed: int) -> None:
    params = random_material(np.random.default_rng(seed))
    speeds = Material.from_parameters(params).speeds

    assert speeds.fast_p > speeds.shear > speeds.slow_p > 0.0


def _pattern(matrix: np.ndarray) -> np.ndarray:
    return np.abs(matrix) > 0.0


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_random_source_matrix_structure(seed: int) -> None:
    viscous = assemble_jacobians(random_material(np.random.default_rng(seed))).E
    inviscid = assemble_jacobians(random_material(np.random.default_rng(seed), viscous=False)).E

    assert not np.any(np.tril(viscous, -1))
    assert np.count_nonzero(viscous) == 6
    assert np.count_nonzero(np.triu(viscous, 1)) == 3
    assert np.all(np.diag(viscous)[list(FLUID_VELOCITY)] < 0.0)
    assert not np.any(inviscid)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_random_flux_jacobians_share_sparsity_pattern(seed: int) -> None:
    reference = assemble_jacobians(CONVERGENCE_MATERIAL)
    jac = assemble_jacobians(random_material(np.random.default_rng(seed)))

    for expected, actual in zip(reference.stack, jac.stack, strict=True):
        np.testing.assert_array_equal(_pattern(actual), _pattern(expected))
    combined = np.abs(jac.A) + np.abs(jac.B) + np.abs(jac.C)
    reference_combined = np.abs(reference.A) + np.abs(reference.B) + np.abs(reference.C)
    np.testing.assert_array_equal(_pattern(combined), _pattern(reference_combined))


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_pressure_coupling_sign_convention(seed: int) -> None:
    params = random_material(np.random.default_rng(seed))
    coeff = derive_coefficients(params)
    row = constitutive_matrix(params)[6]

    np.testing.assert_allclose(row[:3], coeff.M * coeff.alpha, rtol=1e-12)
    assert coeff.M * coeff.alpha > 0.0
    assert not np.any(row[3:6])
    assert row[6] == pytest.approx(coeff.M, rel=1e-12)

    jac = assemble_jacobians(params)
    assert jac.A[PRESSURE, SOLID_VELOCITY[0]] == pytest.approx(coeff.M * coeff.alpha, rel=1e-12)
    assert jac.A[PRESSURE, FLUID_VELOCITY[0]] == pytest.approx(coeff.M, rel=1e-12)
    assert jac.A[STRESS[(0, 0)], FLUID_VELOCITY[0]] == pytest.approx(
        -coeff.M * coeff.alpha, rel=1e-12
    )
