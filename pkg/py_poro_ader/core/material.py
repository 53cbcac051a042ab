"""Biot material model: derived coefficients, Jacobians and wave speeds."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, fields, replace
from functools import cached_property
import math

import numpy as np
import structlog

from py_poro_ader.config.defaults import (
    MATERIAL_KEYS,
    QUANTITIES,
    UNIT_VECTOR_TOLERANCE,
    ZERO_EIGENVALUE_RATIO,
)
from py_poro_ader.exceptions import EigenSolverError, MaterialError, ValidationError

log = structlog.get_logger()

# Quantity indices in the state vector.
STRESS = {(0, 0): 0, (1, 1): 1, (2, 2): 2, (0, 1): 3, (1, 2): 4, (0, 2): 5}
SOLID_VELOCITY = (6, 7, 8)
PRESSURE = 9
FLUID_VELOCITY = (10, 11, 12)

# Constitutive (Voigt) ordering: xx, yy, zz, yz, xz, xy, then -p.
_VOIGT_PAIRS = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))


@dataclass(frozen=True)
class MaterialParameters:
    """Biot inputs in SI units."""

    K_S: float
    rho_S: float
    lambda_M: float
    mu_M: float
    phi: float
    kappa: float
    T: float
    K_F: float
    rho_F: float
    nu: float

    @classmethod
    def from_mapping(cls, values: Mapping[str, float]) -> MaterialParameters:
        missing = [key for key in MATERIAL_KEYS if key not in values]
        if missing:
            raise MaterialError(missing[0], "missing value")
        return cls(**{key: float(values[key]) for key in MATERIAL_KEYS})

    def as_dict(self) -> dict[str, float]:
        return {item.name: getattr(self, item.name) for item in fields(self)}

    def with_scaled_moduli(self, factor: float) -> MaterialParameters:
        return replace(
            self,
            K_S=self.K_S * factor,
            lambda_M=self.lambda_M * factor,
            mu_M=self.mu_M * factor,
            K_F=self.K_F * factor,
        )


@dataclass(frozen=True)
class DerivedCoefficients:
    K_M: float
    M: float
    alpha: float
    rho: float
    f_c: float


@dataclass(frozen=True, eq=False)
class Jacobians:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    E: np.ndarray

    @property
    def stack(self) -> np.ndarray:
        """Flux Jacobians as one (3, 13, 13) array ordered x, y, z."""
        return np.stack((self.A, self.B, self.C))

    def normal(self, direction) -> np.ndarray:
        n = np.asarray(direction, dtype=float)
        return n[0] * self.A + n[1] * self.B + n[2] * self.C


@dataclass(frozen=True)
class WaveSpeeds:
    fast_p: float
    shear: float
    slow_p: float

    def as_tuple(self) -> tuple[float, float, float]:
        return tuple(sorted((self.fast_p, self.shear, self.slow_p), reverse=True))

    @property
    def maximum(self) -> float:
        return max(self.fast_p, self.shear, self.slow_p)


@dataclass(frozen=True, eq=False)
class Material:
    """Material parameters bundled with everything derived from them."""

    parameters: MaterialParameters
    coefficients: DerivedCoefficients
    jacobians: Jacobians

    @classmethod
    def from_parameters(cls, params: MaterialParameters) -> Material:
        return cls(
            parameters=params,
            coefficients=derive_coefficients(params),
            jacobians=assemble_jacobians(params),
        )

    @cached_property
    def speeds(self) -> WaveSpeeds:
        return wave_speeds(self.jacobians, (1.0, 0.0, 0.0))

    @property
    def max_speed(self) -> float:
        return self.speeds.maximum


def validate_parameters(params: MaterialParameters) -> None:
    for key, value in params.as_dict().items():
        if not math.isfinite(value):
            raise MaterialError(key, f"must be finite, got {value}")

    for key in ("K_S", "rho_S", "mu_M", "K_F", "rho_F", "kappa", "T"):
        value = getattr(params, key)
        if value <= 0:
            raise MaterialError(key, f"must be positive, got {value}")

    if params.lambda_M + 2.0 / 3.0 * params.mu_M <= 0:
        raise MaterialError("lambda_M", "K_M = lambda_M + 2/3 mu_M must be positive")
    if not 0 < params.phi < 1:
        raise MaterialError("phi", f"porosity must lie in (0, 1), got {params.phi}")
    if params.nu < 0:
        raise MaterialError("nu", f"viscosity must be non-negative, got {params.nu}")


def derive_coefficients(params: MaterialParameters) -> DerivedCoefficients:
    validate_parameters(params)

    K_M = params.lambda_M + 2.0 / 3.0 * params.mu_M
    alpha = 1.0 - K_M / params.K_S
    denominator = (1.0 - K_M / params.K_S) - params.phi * (1.0 - params.K_S / params.K_F)
    if denominator <= 0:
        raise MaterialError(
            "(1 - K_M/K_S) - phi*(1 - K_S/K_F)",
            f"coupling modulus denominator must be positive, got {denominator:.6e}",
        )

    M = params.K_S / denominator
    rho = params.phi * params.rho_F + (1.0 - params.phi) * params.rho_S
    if params.nu == 0:
        f_c = math.inf
    else:
        f_c = params.nu * params.phi / (2.0 * math.pi * params.T * params.kappa * params.rho_F)

    return DerivedCoefficients(K_M=K_M, M=M, alpha=alpha, rho=rho, f_c=f_c)


def constitutive_matrix(params: MaterialParameters) -> np.ndarray:
    """Symmetric 7x7 map from (strains, -zeta) to (stresses, -p), engineering shear."""
    coeff = derive_coefficients(params)
    coupling = coeff.M * coeff.alpha
    lambda_c = params.lambda_M + coupling * coeff.alpha

    matrix = np.zeros((7, 7))
    matrix[:3, :3] = lambda_c
    matrix[:3, :3] += 2.0 * params.mu_M * np.eye(3)
    matrix[3:6, 3:6] = params.mu_M * np.eye(3)
    matrix[:3, 6] = coupling
    matrix[6, :3] = coupling
    matrix[6, 6] = coeff.M
    return matrix


def _strain_rate_map(direction: int) -> np.ndarray:
    """Coefficients of d/dx_direction of (v, v_f) in the strain rates."""
    rate = np.zeros((7, 6))
    for row, (i, j) in enumerate(_VOIGT_PAIRS):
        if i == j:
            if i == direction:
                rate[row, i] = 1.0
            continue
        if direction == i:
            rate[row, j] = 1.0
        if direction == j:
            rate[row, i] = 1.0
    rate[6, 3 + direction] = 1.0
    return rate


def _inertia_inverse(params: MaterialParameters, rho: float) -> np.ndarray:
    m22 = params.rho_F * params.T / params.phi
    inertia = np.array([[rho, params.rho_F], [params.rho_F, m22]])
    return np.linalg.inv(inertia)


def assemble_jacobians(params: MaterialParameters) -> Jacobians:
    coeff = derive_coefficients(params)
    constitutive = constitutive_matrix(params)
    inv_inertia = _inertia_inverse(params, coeff.rho)

    stress_rows = [STRESS[pair] for pair in _VOIGT_PAIRS] + [PRESSURE]
    stress_signs = [1.0] * 6 + [-1.0]
    velocity_cols = list(SOLID_VELOCITY) + list(FLUID_VELOCITY)

    matrices = []
    for direction in range(3):
        jac = np.zeros((QUANTITIES, QUANTITIES))
        block = constitutive @ _strain_rate_map(direction)
        for voigt, (row, sign) in enumerate(zip(stress_rows, stress_signs, strict=True)):
            jac[row, velocity_cols] = -sign * block[voigt]

        # Momentum: inertia * d/dt (v_i, vf_i) = (d sigma_ij/dx_j, -dp/dx_i)
        for i in range(3):
            sigma = STRESS[tuple(sorted((i, direction)))]
            jac[SOLID_VELOCITY[i], sigma] = -inv_inertia[0, 0]
            jac[FLUID_VELOCITY[i], sigma] = -inv_inertia[1, 0]
        jac[SOLID_VELOCITY[direction], PRESSURE] = inv_inertia[0, 1]
        jac[FLUID_VELOCITY[direction], PRESSURE] = inv_inertia[1, 1]
        matrices.append(jac)

    source = np.zeros((QUANTITIES, QUANTITIES))
    if params.nu > 0:
        drag = params.nu / params.kappa
        for i in range(3):
            source[SOLID_VELOCITY[i], FLUID_VELOCITY[i]] = -inv_inertia[0, 1] * drag
            source[FLUID_VELOCITY[i], FLUID_VELOCITY[i]] = -inv_inertia[1, 1] * drag

    log.debug("jacobians_assembled", nu=params.nu, source_nonzeros=int(np.count_nonzero(source)))
    return Jacobians(A=matrices[0], B=matrices[1], C=matrices[2], E=source)


def wave_speeds(jac: Jacobians, direction) -> WaveSpeeds:
    n = np.asarray(direction, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > UNIT_VECTOR_TOLERANCE:
        raise ValidationError(f"direction must be a unit 3-vector, got {tuple(n)}")

    eigenvalues = np.linalg.eigvals(jac.normal(n))
    scale = np.max(np.abs(eigenvalues))
    if np.max(np.abs(eigenvalues.imag)) > 1e-8 * scale:
        raise EigenSolverError("normal Jacobian has a complex spectrum")

    values = np.sort(eigenvalues.real)
    nonzero = values[np.abs(values) >= ZERO_EIGENVALUE_RATIO * scale]
    zero_count = QUANTITIES - nonzero.size
    if zero_count != 5 or nonzero.size != 8:
        raise EigenSolverError(f"expected 5 zero eigenvalues, found {zero_count}")

    positive = np.sort(nonzero[nonzero > 0])[::-1]
    negative = np.sort(-nonzero[nonzero < 0])[::-1]
    if positive.size != 4 or not np.allclose(positive, negative, rtol=1e-8, atol=0.0):
        raise EigenSolverError("nonzero eigenvalues do not form +/- pairs")

    # The shear speed is the degenerate pair among the four positive speeds.
    gaps = np.abs(np.diff(positive)) / positive[:-1]
    pair = int(np.argmin(gaps))
    shear = 0.5 * (positive[pair] + positive[pair + 1])
    remaining = np.delete(positive, [pair, pair + 1])
    return WaveSpeeds(fast_p=float(remaining[0]), shear=float(shear), slow_p=float(remaining[1]))


def one_dimensional_p_speeds(params: MaterialParameters) -> tuple[float, float]:
    """Fast and slow P speeds from the closed-form dispersion relation."""
    coeff = derive_coefficients(params)
    m22 = params.rho_F * params.T / params.phi
    determinant = coeff.rho * m22 - params.rho_F**2
    coupling = coeff.M * coeff.alpha
    H = params.lambda_M + 2.0 * params.mu_M + coupling * coeff.alpha

    a = determinant
    b = -(H * m22 + coeff.M * coeff.rho - 2.0 * coupling * params.rho_F)
    c = H * coeff.M - coupling**2
    roots = np.roots([a, b, c])
    if np.any(np.abs(roots.imag) > 0) or np.any(roots.real <= 0):
        raise EigenSolverError("P-wave dispersion relation has no positive real roots")
    fast, slow = np.sqrt(np.sort(roots.real)[::-1])
    return float(fast), float(slow)


def random_material(rng: np.random.Generator, *, viscous: bool = True) -> MaterialParameters:
    """Draw a physically valid parameter set for property checks."""
    K_S = rng.uniform(1e10, 5e10)
    K_M = rng.uniform(0.2, 0.6) * K_S
    mu_M = rng.uniform(0.3, 0.9) * K_M
    return MaterialParameters(
        K_S=K_S,
        rho_S=rng.uniform(2000.0, 3000.0),
        lambda_M=K_M - 2.0 / 3.0 * mu_M,
        mu_M=mu_M,
        phi=rng.uniform(0.1, 0.4),
        kappa=rng.uniform(1e-13, 1e-12),
        T=rng.uniform(1.5, 3.5),
        K_F=rng.uniform(2e9, 3e9),
        rho_F=rng.uniform(900.0, 1100.0),
        nu=rng.uniform(5e-4, 2e-3) if viscous else 0.0,
    )
