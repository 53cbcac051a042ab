"""Analytic plane-wave solutions of the linear Biot system."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eig, matrix_balance
import structlog

from py_poro_ader.config.defaults import DEFAULT_AMPLITUDES, QUANTITIES
from py_poro_ader.core.material import SOLID_VELOCITY, Material
from py_poro_ader.exceptions import EigenSolverError, ValidationError

log = structlog.get_logger()

DEGENERACY_TOLERANCE = 1e-8
FORWARD_LABELS: tuple[str, ...] = ("fast_p", "shear_1", "shear_2", "slow_p")


@dataclass(frozen=True, eq=False)
class PlaneWaveSolution:
    """Superposition of eigenmodes exp(i(omega t - k.x)) with real amplitudes.

    Modes are columns of ``modes`` ordered by descending phase speed; modes with
    zero phase speed (static or purely decaying) follow in ascending decay rate.
    """

    wave_vector: np.ndarray
    omegas: np.ndarray
    modes: np.ndarray
    amplitudes: np.ndarray
    labels: tuple[str, ...]

    @property
    def phase_speeds(self) -> np.ndarray:
        return self.omegas.real / np.linalg.norm(self.wave_vector)


def _polarisations(direction: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    reference = np.array([0.0, 0.0, 1.0])
    if np.linalg.norm(np.cross(direction, reference)) < 1e-8:
        reference = np.array([1.0, 0.0, 0.0])
    first = np.cross(direction, reference)
    first /= np.linalg.norm(first)
    second = np.cross(direction, first)
    return first, second / np.linalg.norm(second)


def _rotate_pair(vectors: np.ndarray, direction: np.ndarray) -> np.ndarray:
    """Fix a degenerate pair by fitting its solid velocity to fixed polarisations."""
    velocity = vectors[list(SOLID_VELOCITY)]
    rotated = []
    for polarisation in _polarisations(direction):
        weights, *_ = np.linalg.lstsq(velocity, polarisation.astype(complex), rcond=None)
        rotated.append(vectors @ weights)
    return np.stack(rotated, axis=1)


def _normalise(vector: np.ndarray) -> np.ndarray:
    vector = vector / np.linalg.norm(vector)
    significant = np.flatnonzero(np.abs(vector) > 1e-8 * np.max(np.abs(vector)))[0]
    phase = vector[significant] / abs(vector[significant])
    return vector / phase


def _labels(real_parts: np.ndarray) -> tuple[str, ...]:
    forward = iter(FORWARD_LABELS)
    backward = list(FORWARD_LABELS[: int(np.sum(real_parts < 0))])
    labels = []
    for index, value in enumerate(real_parts):
        if value > 0:
            labels.append(next(forward, f"mode_{index + 1}"))
        elif value < 0:
            labels.append(f"{backward.pop() if backward else f'mode_{index + 1}'}_back")
        else:
            labels.append(f"stationary_{index + 1}")
    return tuple(labels)


def _velocity_spans_pair(vectors: np.ndarray) -> bool:
    return np.linalg.matrix_rank(vectors[list(SOLID_VELOCITY)], tol=1e-10) == 2


def plane_wave_modes(material: Material, wave_vector, amplitudes=None) -> PlaneWaveSolution:
    k = np.asarray(wave_vector, dtype=float)
    if k.shape != (3,) or not np.linalg.norm(k) > 0:
        raise ValidationError(f"wave vector must be a nonzero 3-vector, got {tuple(k)}")
    amplitudes = np.asarray(DEFAULT_AMPLITUDES if amplitudes is None else amplitudes, dtype=float)
    if amplitudes.shape != (QUANTITIES,):
        raise ValidationError(f"expected {QUANTITIES} amplitudes, got {amplitudes.size}")

    jac = material.jacobians
    operator = jac.normal(k) - 1j * jac.E
    _, (scaling, _) = matrix_balance(np.abs(operator), permute=False, separate=True)
    balanced = operator / scaling[:, None] * scaling[None, :]
    omegas, vectors = eig(balanced)
    vectors = scaling[:, None] * vectors

    norm_k = np.linalg.norm(k)
    tolerance = DEGENERACY_TOLERANCE * np.max(np.abs(omegas))
    real = np.where(np.abs(omegas.real) < tolerance, 0.0, omegas.real)
    imag = np.where(np.abs(omegas.imag) < tolerance, 0.0, omegas.imag)
    order = np.lexsort((imag, -real / norm_k))
    omegas, vectors, real = omegas[order], vectors[:, order], real[order]

    direction = k / norm_k
    index = 0
    while index < QUANTITIES - 1:
        pair = slice(index, index + 2)
        isolated = index + 2 == QUANTITIES or abs(omegas[index + 1] - omegas[index + 2]) > tolerance
        if (
            abs(omegas[index] - omegas[index + 1]) <= tolerance
            and isolated
            and _velocity_spans_pair(vectors[:, pair])
        ):
            vectors[:, pair] = _rotate_pair(vectors[:, pair], direction)
            index += 2
            continue
        index += 1

    modes = np.stack([_normalise(vectors[:, i]) for i in range(QUANTITIES)], axis=1)
    residual = np.max(np.abs(operator @ modes - modes * omegas))
    if residual > 1e-8 * np.max(np.abs(operator)):
        raise EigenSolverError(f"plane-wave eigenpairs have residual {residual:.3e}")

    log.debug("plane_wave_modes_built", wave_vector=tuple(k), phase_speeds=tuple(real / norm_k))
    return PlaneWaveSolution(
        wave_vector=k,
        omegas=omegas,
        modes=modes,
        amplitudes=amplitudes,
        labels=_labels(real),
    )


def evaluate(solution: PlaneWaveSolution, points: np.ndarray, t: float) -> np.ndarray:
    """Real state (npts, 13) at physical points (npts, 3) and time t."""
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    phase = np.exp(1j * (solution.omegas[None, :] * t - (points @ solution.wave_vector)[:, None]))
    return np.real((phase * solution.amplitudes) @ solution.modes.T)
