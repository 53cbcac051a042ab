import numpy as np
import pytest

from py_poro_ader.core.basis.spatial import SpatialBasis
from py_poro_ader.core.dg.flux import build_flux_operators, face_mass_matrices, upwind_split
from py_poro_ader.core.material import Material
from py_poro_ader.core.mesh.cube import build_periodic_cube_mesh
from tests.materials import LOWER_HALF_SPACE

DIRECTIONS = [
    (1.0, 0.0, 0.0),
    (0.0, 0.0, 1.0),
    (1.0 / np.sqrt(2.0), -1.0 / np.sqrt(2.0), 0.0),
    (1.0 / np.sqrt(3.0), 1.0 / np.sqrt(3.0), 1.0 / np.sqrt(3.0)),
]


@pytest.mark.parametrize("normal", DIRECTIONS)
def test_upwind_split_reconstructs_normal_jacobian(convergence_material, normal) -> None:
    a_n = convergence_material.jacobians.normal(normal)
    split = upwind_split(a_n)
    assert np.allclose(split.plus + split.minus, a_n, rtol=0.0, atol=1e-8 * np.abs(a_n).max())


@pytest.mark.parametrize("normal", DIRECTIONS)
def test_upwind_parts_have_signed_spectra(convergence_material, normal) -> None:
    split = upwind_split(convergence_material.jacobians.normal(normal))
    scale = convergence_material.max_speed
    plus = np.linalg.eigvals(split.plus)
    minus = np.linalg.eigvals(split.minus)
    assert np.all(plus.real >= -1e-6 * scale)
    assert np.all(minus.real <= 1e-6 * scale)
    assert np.count_nonzero(np.abs(plus) > 1e-3 * scale) == 4
    assert np.count_nonzero(np.abs(minus) > 1e-3 * scale) == 4


def test_opposite_normal_swaps_parts(inviscid_material) -> None:
    normal = np.array(DIRECTIONS[3])
    forward = upwind_split(inviscid_material.jacobians.normal(normal))
    backward = upwind_split(inviscid_material.jacobians.normal(-normal))
    tol = 1e-8 * np.abs(forward.plus).max()
    assert np.allclose(backward.plus, -forward.minus, rtol=0.0, atol=tol)
    assert np.allclose(backward.minus, -forward.plus, rtol=0.0, atol=tol)


def test_zero_matrix_splits_to_zero() -> None:
    split = upwind_split(np.zeros((13, 13)))
    assert not split.plus.any()
    assert not split.minus.any()


@pytest.fixture(scope="module")
def mesh():
    return build_periodic_cube_mesh(2)


def test_face_mass_matrices_scale_with_area(mesh) -> None:
    basis = SpatialBasis(2)
    e, f = 0, 3
    area = float(mesh.areas[e, f])
    local, neighbor = face_mass_matrices(
        basis, f, int(mesh.neighbor_faces[e, f]), int(mesh.orientations[e, f]), area
    )
    assert local.shape == neighbor.shape == (basis.count, basis.count)
    assert local[0, 0] == pytest.approx(area)
    assert neighbor[0, 0] == pytest.approx(area)
    assert np.allclose(local, local.T)
    assert np.all(np.linalg.eigvalsh(local) > -1e-13)


def test_neighbor_face_matrices_are_mutual_transposes(mesh) -> None:
    basis = SpatialBasis(3)
    for e in (0, 4, 17):
        for f in range(4):
            nb = int(mesh.neighbors[e, f])
            nf = int(mesh.neighbor_faces[e, f])
            _, forward = face_mass_matrices(
                basis, f, nf, int(mesh.orientations[e, f]), float(mesh.areas[e, f])
            )
            _, backward = face_mass_matrices(
                basis, nf, f, int(mesh.orientations[nb, nf]), float(mesh.areas[nb, nf])
            )
            assert np.allclose(forward, backward.T, atol=1e-12)


def test_flux_groups_cover_every_face_once(mesh, convergence_material) -> None:
    fluxes = build_flux_operators(mesh, convergence_material, 2)
    seen = np.zeros((mesh.element_count, 4), dtype=int)
    for flux in fluxes:
        seen[flux.elements, flux.face] += 1
        assert np.array_equal(flux.neighbors, mesh.neighbors[flux.elements, flux.face])
        assert np.allclose(mesh.normals[flux.elements, flux.face], flux.normal)
    assert np.all(seen == 1)


def test_interface_uses_each_side_material(mesh, convergence_material) -> None:
    other = Material.from_parameters(LOWER_HALF_SPACE)
    material_of = (mesh.vertices.mean(axis=1)[:, 2] > 0).astype(int)
    fluxes = build_flux_operators(mesh, (convergence_material, other), 1, material_of)

    for flux in fluxes:
        own = material_of[flux.elements[0]]
        neighbor = material_of[flux.neighbors[0]]
        assert np.all(material_of[flux.elements] == own)
        assert np.all(material_of[flux.neighbors] == neighbor)
    interfaces = [
        flux for flux in fluxes if material_of[flux.elements[0]] != material_of[flux.neighbors[0]]
    ]
    assert interfaces
    materials = (convergence_material, other)
    for flux in interfaces:
        own = materials[material_of[flux.elements[0]]]
        neighbor = materials[material_of[flux.neighbors[0]]]
        own_split = upwind_split(own.jacobians.normal(flux.normal))
        neighbor_split = upwind_split(neighbor.jacobians.normal(flux.normal))
        tol = 1e-8 * np.abs(own_split.plus).max()
        assert np.allclose(flux.a_plus, own_split.plus, rtol=0.0, atol=tol)
        assert np.allclose(flux.a_minus, neighbor_split.minus, rtol=0.0, atol=tol)


def test_interface_split_is_not_consistent_with_either_side(mesh, convergence_material) -> None:
    other = Material.from_parameters(LOWER_HALF_SPACE)
    material_of = (mesh.vertices.mean(axis=1)[:, 2] > 0).astype(int)
    materials = (convergence_material, other)
    fluxes = build_flux_operators(mesh, materials, 1, material_of)

    for flux in fluxes:
        own = materials[material_of[flux.elements[0]]]
        neighbor = materials[material_of[flux.neighbors[0]]]
        combined = flux.a_plus + flux.a_minus
        tol = 1e-8 * np.abs(combined).max()
        if own is neighbor:
            assert np.allclose(combined, own.jacobians.normal(flux.normal), rtol=0.0, atol=tol)
        else:
            for side in (own, neighbor):
                assert not np.allclose(
                    combined, side.jacobians.normal(flux.normal), rtol=0.0, atol=tol
                )
