"""Reference mass and stiffness matrices shared by every element."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import structlog

from py_poro_ader.config.defaults import MAX_DEGREE, MIN_DEGREE, ROUNDOFF_FLUSH
from py_poro_ader.core.basis.quadrature import Domain, quadrature_rule
from py_poro_ader.core.basis.spatial import SpatialBasis, basis_count
from py_poro_ader.core.basis.temporal import TemporalOperators, build_temporal_operators
from py_poro_ader.exceptions import ValidationError

log = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class SpatialOperators:
    degree: int
    mass: np.ndarray
    stiffness: np.ndarray
    stiffness_hat: np.ndarray


@dataclass(frozen=True, eq=False)
class ReferenceOperators:
    """Spatial and temporal element matrices for one polynomial degree.

    ``mass`` holds the diagonal of M. ``stiffness[a][k, l]`` is the integral of
    phi_k times d(phi_l)/d(xi_a); entries at round-off level are flushed to zero
    so the block upper-triangular structure is exact.
    """

    degree: int
    basis: SpatialBasis
    mass: np.ndarray
    stiffness: np.ndarray
    stiffness_hat: np.ndarray
    temporal: TemporalOperators

    @property
    def count(self) -> int:
        return self.basis.count

    @property
    def time_modes(self) -> int:
        return self.degree + 1

    @property
    def degrees(self) -> np.ndarray:
        return self.basis.degrees

    @property
    def block_bounds(self) -> tuple[int, ...]:
        """B_n = binom(n+3, 3) for n = 0..N; block n covers [B_{n-1}, B_n)."""
        return tuple(basis_count(n) for n in range(self.degree + 1))

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(self.block(n).stop - self.block(n).start for n in range(self.degree + 1))

    def block(self, degree: int) -> slice:
        start = basis_count(degree - 1) if degree > 0 else 0
        return slice(start, basis_count(degree))

    # Temporal shortcuts used throughout the predictor.
    @property
    def W(self) -> np.ndarray:
        return self.temporal.W

    @property
    def w(self) -> np.ndarray:
        return self.temporal.w

    @property
    def S(self) -> np.ndarray:
        return self.temporal.S

    @property
    def K_tau(self) -> np.ndarray:
        return self.temporal.K_tau

    @property
    def Z(self) -> np.ndarray:
        return self.temporal.Z

    @property
    def S_inv_w(self) -> np.ndarray:
        return self.temporal.S_inv_w

    @property
    def time_integral(self) -> np.ndarray:
        return self.temporal.time_integral


def _check_degree(degree: int) -> None:
    if not MIN_DEGREE <= degree <= MAX_DEGREE:
        raise ValidationError(f"order must lie in [{MIN_DEGREE}, {MAX_DEGREE}], got {degree}")


def build_spatial_operators(degree: int) -> SpatialOperators:
    _check_degree(degree)
    return _spatial_operators(degree)


@lru_cache(maxsize=None)
def _spatial_operators(degree: int) -> SpatialOperators:
    basis = SpatialBasis(degree)
    rule = quadrature_rule(Domain.TET, 2 * degree)
    values, gradients = basis.tabulate(rule.points)

    weighted = values * rule.weights[:, None]
    mass = np.diag(weighted.T @ values).copy()
    stiffness = np.einsum("qk,qla->akl", weighted, gradients)

    scale = np.max(np.abs(stiffness))
    stiffness[np.abs(stiffness) < ROUNDOFF_FLUSH * scale] = 0.0
    stiffness_hat = stiffness / mass[None, :, None]

    log.debug("spatial_operators_built", degree=degree, modes=basis.count)
    return SpatialOperators(
        degree=degree, mass=mass, stiffness=stiffness, stiffness_hat=stiffness_hat
    )


@lru_cache(maxsize=None)
def build_reference_operators(degree: int) -> ReferenceOperators:
    spatial = build_spatial_operators(degree)
    return ReferenceOperators(
        degree=degree,
        basis=SpatialBasis(degree),
        mass=spatial.mass,
        stiffness=spatial.stiffness,
        stiffness_hat=spatial.stiffness_hat,
        temporal=build_temporal_operators(degree),
    )


def reference_matrices(ops: ReferenceOperators) -> dict[str, np.ndarray]:
    """Named dense matrices for export."""
    return {
        "M": np.diag(ops.mass),
        "K_xi": ops.stiffness[0],
        "K_eta": ops.stiffness[1],
        "K_zeta": ops.stiffness[2],
        "Khat_xi": ops.stiffness_hat[0],
        "Khat_eta": ops.stiffness_hat[1],
        "Khat_zeta": ops.stiffness_hat[2],
        "W": ops.W,
        "w": ops.w[:, None],
        "S": ops.S,
        "K_tau": ops.K_tau,
        "Z": ops.Z,
        "S_inv_w": ops.S_inv_w[:, None],
    }
