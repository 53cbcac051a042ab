"""Dubiner basis on the reference tetrahedron and scaled Jacobi recurrences."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np

from py_poro_ader.exceptions import ValidationError


def scaled_jacobi(
    degree: int, alpha: float, x: np.ndarray, y: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evaluate y^n P_n^(alpha,0)(2x/y - 1) and its partial derivatives in x and y.

    The homogenised recurrence never divides by y, so values stay finite on the
    collapsed edges of the tetrahedron.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    beta = 0.0
    s = alpha + beta

    prev = np.ones_like(x)
    prev_dx = np.zeros_like(x)
    prev_dy = np.zeros_like(x)
    if degree == 0:
        return prev, prev_dx, prev_dy

    t = 2.0 * x - y
    cur = 0.5 * ((s + 2.0) * t + (alpha - beta) * y)
    cur_dx = np.full_like(x, s + 2.0)
    cur_dy = np.full_like(x, 0.5 * (-(s + 2.0) + (alpha - beta)))

    for n in range(1, degree):
        den = 2.0 * (n + 1) * (n + s + 1) * (2 * n + s)
        a = (2 * n + s + 1) * (2 * n + s + 2) * (2 * n + s) / den
        b = (2 * n + s + 1) * (alpha**2 - beta**2) / den
        c = 2.0 * (n + alpha) * (n + beta) * (2 * n + s + 2) / den

        factor = a * t + b * y
        nxt = factor * cur - c * y**2 * prev
        nxt_dx = 2.0 * a * cur + factor * cur_dx - c * y**2 * prev_dx
        nxt_dy = (b - a) * cur + factor * cur_dy - 2.0 * c * y * prev - c * y**2 * prev_dy

        prev, prev_dx, prev_dy = cur, cur_dx, cur_dy
        cur, cur_dx, cur_dy = nxt, nxt_dx, nxt_dy

    return cur, cur_dx, cur_dy


def mode_indices(degree: int) -> tuple[tuple[int, int, int], ...]:
    """(i, j, k) triples ordered by total degree, then i, then j."""
    indices = []
    for total in range(degree + 1):
        for i in range(total + 1):
            for j in range(total - i + 1):
                indices.append((i, j, total - i - j))
    return tuple(indices)


def basis_count(degree: int) -> int:
    return comb(degree + 3, 3)


@dataclass(frozen=True)
class SpatialBasis:
    """Unnormalised Dubiner polynomials of total degree <= ``degree``."""

    degree: int

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValidationError(f"basis degree must be non-negative, got {self.degree}")

    @property
    def count(self) -> int:
        return basis_count(self.degree)

    @cached_property
    def indices(self) -> tuple[tuple[int, int, int], ...]:
        return mode_indices(self.degree)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([sum(index) for index in self.indices], dtype=int)

    @cached_property
    def norms(self) -> np.ndarray:
        """Analytic values of the integral of phi_l^2 over the reference tetrahedron."""
        return np.array(
            [
                1.0 / ((2 * i + 1) * (2 * i + 2 * j + 2) * (2 * i + 2 * j + 2 * k + 3))
                for i, j, k in self.indices
            ]
        )

    def tabulate(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Values (npts, B) and gradients (npts, B, 3) at reference points (npts, 3)."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        xi, eta, zeta = points[:, 0], points[:, 1], points[:, 2]
        u = 1.0 - eta - zeta
        v = 1.0 - zeta
        ones = np.ones_like(zeta)

        values = np.empty((points.shape[0], self.count))
        gradients = np.empty((points.shape[0], self.count, 3))
        for mode, (i, j, k) in enumerate(self.indices):
            f1, f1_x, f1_y = scaled_jacobi(i, 0.0, xi, u)
            f2, f2_x, f2_y = scaled_jacobi(j, 2.0 * i + 1.0, eta, v)
            f3, f3_x, _ = scaled_jacobi(k, 2.0 * i + 2.0 * j + 2.0, zeta, ones)

            values[:, mode] = f1 * f2 * f3
            gradients[:, mode, 0] = f1_x * f2 * f3
            gradients[:, mode, 1] = -f1_y * f2 * f3 + f1 * f2_x * f3
            gradients[:, mode, 2] = -f1_y * f2 * f3 - f1 * f2_y * f3 + f1 * f2 * f3_x
        return values, gradients


def evaluate_basis(basis: SpatialBasis, index: int, point) -> tuple[float, np.ndarray]:
    if not 0 <= index < basis.count:
        raise ValidationError(f"mode index {index} out of range [0, {basis.count})")
    values, gradients = basis.tabulate(np.asarray(point, dtype=float).reshape(1, 3))
    return float(values[0, index]), gradients[0, index].copy()
