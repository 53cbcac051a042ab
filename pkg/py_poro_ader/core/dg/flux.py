"""Upwind face fluxes between neighboring tetrahedra."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eig, matrix_balance
import structlog

from py_poro_ader.core.basis.quadrature import Domain, quadrature_rule
from py_poro_ader.core.basis.spatial import SpatialBasis
from py_poro_ader.core.material import Material
from py_poro_ader.core.mesh.cube import FACE_VERTICES, ORIENTATIONS, REFERENCE_VERTICES, Mesh
from py_poro_ader.exceptions import EigenSolverError

log = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class UpwindSplit:
    plus: np.ndarray
    minus: np.ndarray


@dataclass(frozen=True, eq=False)
class FluxOperator:
    """Flux through one local face for a group of geometrically identical faces.

    The contribution to element e is ``a_plus @ I_e @ local + a_minus @ I_nb @ neighbor``
    where I are time-averaged coefficients (13, B) and the face matrices carry
    the physical face area.
    """

    face: int
    normal: np.ndarray
    area: float
    a_plus: np.ndarray
    a_minus: np.ndarray
    local: np.ndarray
    neighbor: np.ndarray
    elements: np.ndarray
    neighbors: np.ndarray


def upwind_split(normal_jacobian: np.ndarray) -> UpwindSplit:
    """Split A_n = R L+ R^-1 + R L- R^-1 by the sign of its real eigenvalues."""
    a_n = np.asarray(normal_jacobian, dtype=float)
    balanced, scaling = matrix_balance(a_n, permute=False, separate=True)
    values, vectors = eig(balanced)

    scale = np.max(np.abs(values))
    if scale == 0:
        zero = np.zeros_like(a_n)
        return UpwindSplit(plus=zero, minus=zero.copy())
    if np.max(np.abs(values.imag)) > 1e-8 * scale:
        raise EigenSolverError("normal Jacobian has a complex spectrum")

    values = values.real
    values[np.abs(values) < 1e-10 * scale] = 0.0
    vectors = scaling[0][:, None] * vectors
    try:
        inverse = np.linalg.inv(vectors)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError("normal Jacobian is not diagonalizable") from exc

    plus = (vectors * np.maximum(values, 0.0)) @ inverse
    minus = (vectors * np.minimum(values, 0.0)) @ inverse
    if np.max(np.abs(plus.imag)) + np.max(np.abs(minus.imag)) > 1e-8 * np.max(np.abs(a_n)):
        raise EigenSolverError("upwind split has a non-negligible imaginary part")

    split = UpwindSplit(plus=plus.real, minus=minus.real)
    error = np.max(np.abs(split.plus + split.minus - a_n))
    if error > 1e-8 * np.max(np.abs(a_n)):
        raise EigenSolverError(f"upwind split does not reconstruct A_n (error {error:.3e})")
    return split


class _SplitCache:
    """Splits keyed by material and normal; opposite normals reuse the same factorisation."""

    def __init__(self, materials: tuple[Material, ...]):
        self._materials = materials
        self._splits: dict[tuple, UpwindSplit] = {}

    def get(self, material: int, normal: np.ndarray) -> UpwindSplit:
        rounded = np.round(normal, 12) + 0.0
        first = rounded[np.flatnonzero(rounded)[0]]
        sign = 1.0 if first > 0 else -1.0
        key = (material, *(sign * rounded))
        if key not in self._splits:
            jac = self._materials[material].jacobians.normal(sign * normal)
            self._splits[key] = upwind_split(jac)
        split = self._splits[key]
        if sign > 0:
            return split
        return UpwindSplit(plus=-split.minus, minus=-split.plus)


def _face_points(face: int, triangle_points: np.ndarray, permutation=(0, 1, 2)) -> np.ndarray:
    """Reference-tet coordinates of triangle points, optionally with permuted face vertices."""
    corners = REFERENCE_VERTICES[list(FACE_VERTICES[face])][list(permutation)]
    a, b = triangle_points[:, 0], triangle_points[:, 1]
    barycentric = np.stack((1.0 - a - b, a, b), axis=1)
    return barycentric @ corners


def face_mass_matrices(
    basis: SpatialBasis, face: int, neighbor_face: int, orientation: int, area: float
) -> tuple[np.ndarray, np.ndarray]:
    """Own-own and neighbor-own face mass matrices, indexed [l, k]."""
    rule = quadrature_rule(Domain.TRIANGLE, 2 * basis.degree)
    own_values, _ = basis.tabulate(_face_points(face, rule.points))

    # Own face vertex k coincides with neighbor face vertex ORIENTATIONS[o][k].
    permutation = ORIENTATIONS[orientation]
    neighbor_values, _ = basis.tabulate(_face_points(neighbor_face, rule.points, permutation))

    weights = 2.0 * area * rule.weights
    local = own_values.T @ (weights[:, None] * own_values)
    neighbor = neighbor_values.T @ (weights[:, None] * own_values)
    return local, neighbor


def build_flux_operators(
    mesh: Mesh,
    materials: Material | tuple[Material, ...],
    order: int,
    material_of: np.ndarray | None = None,
) -> tuple[FluxOperator, ...]:
    """Group faces sharing geometry and materials; each side applies its own splitting.

    Between unequal materials the pairing of the own A+ with the neighbor A- is
    not the exact Riemann solver for the interface.
    """
    if isinstance(materials, Material):
        materials = (materials,)
    if material_of is None:
        material_of = np.zeros(mesh.element_count, dtype=int)

    basis = SpatialBasis(order)
    splits = _SplitCache(tuple(materials))
    groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for e in range(mesh.element_count):
        for f in range(4):
            nb = mesh.neighbors[e, f]
            key = (
                int(mesh.shape_class[e]),
                f,
                int(mesh.shape_class[nb]),
                int(mesh.neighbor_faces[e, f]),
                int(mesh.orientations[e, f]),
                int(material_of[e]),
                int(material_of[nb]),
            )
            groups[key].append(e)

    operators = []
    for key in sorted(groups):
        _, face, _, neighbor_face, orientation, own_material, neighbor_material = key
        elements = np.array(groups[key], dtype=int)
        first = elements[0]
        normal = mesh.normals[first, face]
        area = float(mesh.areas[first, face])
        local, neighbor = face_mass_matrices(basis, face, neighbor_face, orientation, area)
        operators.append(
            FluxOperator(
                face=face,
                normal=normal,
                area=area,
                a_plus=splits.get(own_material, normal).plus,
                a_minus=splits.get(neighbor_material, normal).minus,
                local=local,
                neighbor=neighbor,
                elements=elements,
                neighbors=mesh.neighbors[elements, face],
            )
        )

    log.debug("flux_operators_built", groups=len(operators), order=order)
    return tuple(operators)
