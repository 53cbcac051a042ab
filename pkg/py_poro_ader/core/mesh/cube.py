"""Periodic tetrahedral mesh of a cube built from alternating five-tet splits."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import permutations, product

import numpy as np
import structlog

from py_poro_ader.exceptions import MeshError

log = structlog.get_logger()

# Local faces as reference-vertex triples: zeta=0, eta=0, xi=0, slanted.
FACE_VERTICES: tuple[tuple[int, int, int], ...] = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
REFERENCE_VERTICES = np.array(
    [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
)
ORIENTATIONS: tuple[tuple[int, int, int], ...] = tuple(permutations(range(3)))
TETS_PER_CUBE = 5


def _cube_split(parity: int) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """Five tets of a unit cube; the central tet takes corners whose parity matches."""
    corners = list(product((0, 1), repeat=3))
    central = tuple(c for c in corners if sum(c) % 2 == parity)
    tets = [central]
    for corner in corners:
        if sum(corner) % 2 == parity:
            continue
        neighbors = tuple(
            tuple(c ^ (axis == d) for d, c in enumerate(corner)) for axis in range(3)
        )
        tets.append((corner, *neighbors))

    oriented = []
    for tet in tets:
        v = np.array(tet, dtype=float)
        if np.linalg.det((v[1:] - v[0]).T) < 0:
            tet = (tet[0], tet[2], tet[1], tet[3])
        oriented.append(tet)
    return tuple(oriented)


@dataclass(frozen=True, eq=False)
class Mesh:
    """Affine tetrahedra with periodic face adjacency.

    ``inverse_jacobians[e, j, d]`` is d(xi_j)/d(x_d). ``shifts[e, f]`` is the
    periodic translation taking a point on face f of e to the matching point of
    the neighbor's actual geometry.
    """

    n: int
    lower: float
    upper: float
    vertices: np.ndarray
    jacobians: np.ndarray
    inverse_jacobians: np.ndarray
    determinants: np.ndarray
    shape_class: np.ndarray
    normals: np.ndarray
    areas: np.ndarray
    neighbors: np.ndarray
    neighbor_faces: np.ndarray
    orientations: np.ndarray
    shifts: np.ndarray

    @property
    def h(self) -> float:
        return (self.upper - self.lower) / self.n

    @property
    def element_count(self) -> int:
        return self.vertices.shape[0]

    @property
    def volumes(self) -> np.ndarray:
        return self.determinants / 6.0

    @property
    def domain_volume(self) -> float:
        return (self.upper - self.lower) ** 3

    @property
    def insphere_diameters(self) -> np.ndarray:
        return self.determinants / self.areas.sum(axis=1)

    def physical_points(self, reference_points: np.ndarray) -> np.ndarray:
        """Map reference points (npts, 3) into every element: (nE, npts, 3)."""
        return self.vertices[:, None, 0, :] + np.einsum(
            "edj,qj->eqd", self.jacobians, np.asarray(reference_points, dtype=float)
        )

    def class_members(self) -> dict[int, np.ndarray]:
        return {int(c): np.flatnonzero(self.shape_class == c) for c in np.unique(self.shape_class)}


def build_periodic_cube_mesh(n: int, lower: float = -1.0, upper: float = 1.0) -> Mesh:
    if not isinstance(n, (int, np.integer)) or n < 2 or n % 2:
        raise MeshError(f"subdivisions must be an even integer >= 2, got {n}")
    if not upper > lower:
        raise MeshError(f"domain bounds must satisfy lower < upper, got [{lower}, {upper}]")

    n = int(n)
    h = (upper - lower) / n
    splits = (_cube_split(0), _cube_split(1))

    grid = []
    shape_class = []
    for i, j, k in product(range(n), repeat=3):
        parity = (i + j + k) % 2
        for t, tet in enumerate(splits[parity]):
            grid.append([(i + a, j + b, k + c) for a, b, c in tet])
            shape_class.append(parity * TETS_PER_CUBE + t)
    grid = np.array(grid, dtype=int)
    shape_class = np.array(shape_class, dtype=int)

    vertices = lower + h * grid
    jacobians = np.transpose(vertices[:, 1:] - vertices[:, :1], (0, 2, 1))
    determinants = np.linalg.det(jacobians)
    if np.any(determinants <= 0):
        raise MeshError("element with non-positive orientation")
    inverse_jacobians = np.linalg.inv(jacobians)

    normals, areas = _face_geometry(vertices)
    neighbors, neighbor_faces, orientations, shifts = _pair_faces(grid, n, h)

    mesh = Mesh(
        n=n,
        lower=float(lower),
        upper=float(upper),
        vertices=vertices,
        jacobians=jacobians,
        inverse_jacobians=inverse_jacobians,
        determinants=determinants,
        shape_class=shape_class,
        normals=normals,
        areas=areas,
        neighbors=neighbors,
        neighbor_faces=neighbor_faces,
        orientations=orientations,
        shifts=shifts,
    )
    _check_mesh(mesh)
    log.debug("mesh_built", subdivisions=n, elements=mesh.element_count)
    return mesh


def _face_geometry(vertices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    count = vertices.shape[0]
    normals = np.empty((count, 4, 3))
    areas = np.empty((count, 4))
    for f, local in enumerate(FACE_VERTICES):
        opposite = ({0, 1, 2, 3} - set(local)).pop()
        a, b, c = (vertices[:, v] for v in local)
        cross = np.cross(b - a, c - a)
        norm = np.linalg.norm(cross, axis=1)
        outward = np.where(np.einsum("ed,ed->e", cross, vertices[:, opposite] - a) > 0, -1.0, 1.0)
        normals[:, f] = outward[:, None] * cross / norm[:, None]
        areas[:, f] = 0.5 * norm
    return normals, areas


def _pair_faces(grid: np.ndarray, n: int, h: float):
    count = grid.shape[0]
    # Three times the face centroid, reduced modulo the period, identifies a face.
    buckets: dict[tuple[int, ...], list[tuple[int, int]]] = defaultdict(list)
    for e in range(count):
        for f, local in enumerate(FACE_VERTICES):
            key = tuple(int(v) for v in grid[e, list(local)].sum(axis=0) % (3 * n))
            buckets[key].append((e, f))

    neighbors = np.full((count, 4), -1, dtype=int)
    neighbor_faces = np.full((count, 4), -1, dtype=int)
    orientations = np.full((count, 4), -1, dtype=int)
    shifts = np.zeros((count, 4, 3))

    for key, members in buckets.items():
        if len(members) != 2:
            raise MeshError(f"face {key} is shared by {len(members)} elements, expected 2")
        for (e, f), (e2, f2) in (members, members[::-1]):
            own = grid[e, list(FACE_VERTICES[f])]
            other = grid[e2, list(FACE_VERTICES[f2])]
            offset = other.sum(axis=0) - own.sum(axis=0)
            if np.any(offset % (3 * n)):
                raise MeshError(f"faces of elements {e} and {e2} are not periodic images")
            offset //= 3

            permutation = []
            for vertex in own + offset:
                match = np.flatnonzero((other == vertex).all(axis=1))
                if match.size != 1:
                    raise MeshError(f"non-conforming face between elements {e} and {e2}")
                permutation.append(int(match[0]))

            neighbors[e, f] = e2
            neighbor_faces[e, f] = f2
            orientations[e, f] = ORIENTATIONS.index(tuple(permutation))
            shifts[e, f] = h * offset
    return neighbors, neighbor_faces, orientations, shifts


def _check_mesh(mesh: Mesh) -> None:
    expected = TETS_PER_CUBE * mesh.n**3
    if mesh.element_count != expected:
        raise MeshError(f"expected {expected} elements, built {mesh.element_count}")

    total = float(mesh.volumes.sum())
    if abs(total - mesh.domain_volume) > 1e-12 * mesh.domain_volume:
        raise MeshError(f"element volumes sum to {total}, expected {mesh.domain_volume}")

    paired = mesh.normals[mesh.neighbors, mesh.neighbor_faces]
    if np.max(np.abs(mesh.normals + paired)) > 1e-12:
        raise MeshError("paired face normals are not antiparallel")
