"""ADER-DG time stepping: predictor, corrector and the global loop."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field, replace
import math

import numpy as np
import structlog

from py_poro_ader.config.defaults import DEFAULT_CFL, QUANTITIES
from py_poro_ader.core.basis.operators import ReferenceOperators, build_reference_operators
from py_poro_ader.core.dg.flux import FluxOperator, build_flux_operators
from py_poro_ader.core.material import Material
from py_poro_ader.core.mesh.cube import Mesh
from py_poro_ader.core.stp.operator import StpOperator, build_operator
from py_poro_ader.core.stp.oracle import system_residual
from py_poro_ader.core.stp.predictor import predict_batch, time_integrate
from py_poro_ader.exceptions import NonFiniteStateError, ValidationError

log = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class SimulationState:
    dofs: np.ndarray
    time: float = 0.0
    dt: float = 0.0
    step_count: int = 0


@dataclass(frozen=True, eq=False)
class DGOperators:
    mesh: Mesh
    reference: ReferenceOperators
    materials: tuple[Material, ...]
    material_of: np.ndarray
    dt: float
    predictors: dict[tuple[int, int], StpOperator]
    members: dict[tuple[int, int], np.ndarray]
    fluxes: tuple[FluxOperator, ...]


@dataclass
class RunDiagnostics:
    steps: int = 0
    final_time: float = 0.0
    dt: float = 0.0
    conservation: list[tuple[int, float, np.ndarray]] = field(default_factory=list)
    residuals: list[tuple[int, float]] = field(default_factory=list)

    @property
    def max_residual(self) -> float | None:
        return max((value for _, value in self.residuals), default=None)


def _as_materials(materials) -> tuple[Material, ...]:
    return (materials,) if isinstance(materials, Material) else tuple(materials)


def _material_index(mesh: Mesh, material_of) -> np.ndarray:
    if material_of is None:
        return np.zeros(mesh.element_count, dtype=int)
    return np.asarray(material_of, dtype=int)


def cfl_timestep(
    mesh: Mesh,
    materials: Material | tuple[Material, ...],
    order: int,
    cfl_factor: float = DEFAULT_CFL,
    material_of: np.ndarray | None = None,
) -> float:
    """min over elements of cfl_factor / (2N + 1) * insphere diameter / fastest speed."""
    if not 0 < cfl_factor <= 1:
        raise ValidationError(f"cfl_factor must lie in (0, 1], got {cfl_factor}")
    materials = _as_materials(materials)
    speeds = np.array([material.max_speed for material in materials])
    element_speeds = speeds[_material_index(mesh, material_of)]
    dt = float(np.min(cfl_factor / (2 * order + 1) * mesh.insphere_diameters / element_speeds))
    log.info("timestep_chosen", dt=dt, order=order, cfl_factor=cfl_factor)
    return dt


def build_dg_operators(
    mesh: Mesh,
    materials: Material | tuple[Material, ...],
    order: int,
    dt: float,
    material_of: np.ndarray | None = None,
    fluxes: tuple[FluxOperator, ...] | None = None,
) -> DGOperators:
    materials = _as_materials(materials)
    material_of = _material_index(mesh, material_of)
    reference = build_reference_operators(order)

    keys = np.stack((mesh.shape_class, material_of), axis=1)
    predictors: dict[tuple[int, int], StpOperator] = {}
    members: dict[tuple[int, int], np.ndarray] = {}
    for shape, material in sorted({tuple(int(v) for v in row) for row in keys}):
        elements = np.flatnonzero((mesh.shape_class == shape) & (material_of == material))
        predictors[(shape, material)] = build_operator(
            materials[material].jacobians,
            mesh.inverse_jacobians[elements[0]],
            dt,
            reference,
        )
        members[(shape, material)] = elements

    if fluxes is None:
        fluxes = build_flux_operators(mesh, materials, order, material_of)
    return DGOperators(
        mesh=mesh,
        reference=reference,
        materials=materials,
        material_of=material_of,
        dt=dt,
        predictors=predictors,
        members=members,
        fluxes=fluxes,
    )


def predict_all(dofs: np.ndarray, operators: DGOperators) -> np.ndarray:
    """Time-averaged predictor coefficients for every element: (nE, 13, B)."""
    averaged = np.empty_like(dofs)
    for key, elements in operators.members.items():
        stp = predict_batch(operators.predictors[key], dofs[elements], element_ids=elements)
        averaged[elements] = time_integrate(stp)
    return averaged


def step(state: SimulationState, operators: DGOperators) -> SimulationState:
    """Advance one ADER-DG step of length ``operators.dt``."""
    reference = operators.reference
    mesh = operators.mesh
    averaged = predict_all(state.dofs, operators)

    update = np.zeros_like(state.dofs)
    for key, elements in operators.members.items():
        stp = operators.predictors[key]
        local = averaged[elements]
        volume = (stp.e_star @ local) * reference.mass
        for j in range(3):
            volume += stp.a_star[j] @ local @ reference.stiffness[j]
        update[elements] = volume

    face_scale = operators.dt / mesh.determinants
    for flux in operators.fluxes:
        contribution = (flux.a_plus @ averaged[flux.elements]) @ flux.local
        contribution += (flux.a_minus @ averaged[flux.neighbors]) @ flux.neighbor
        update[flux.elements] -= face_scale[flux.elements, None, None] * contribution

    dofs = state.dofs + update / reference.mass
    step_count = state.step_count + 1
    if not np.all(np.isfinite(dofs)):
        bad = int(np.flatnonzero(~np.isfinite(dofs).all(axis=(1, 2)))[0])
        raise NonFiniteStateError(element=bad, step=step_count)
    return SimulationState(
        dofs=dofs, time=state.time + operators.dt, dt=operators.dt, step_count=step_count
    )


def domain_integrals(mesh: Mesh, dofs: np.ndarray) -> np.ndarray:
    """Integral of every quantity over the domain: sum_e |J_e| / 6 * Q[e, p, 0]."""
    return np.einsum("e,ep->p", mesh.volumes, dofs[:, :, 0])


def _sample_residual(state: SimulationState, operators: DGOperators) -> float:
    key = next(iter(operators.members))
    element = operators.members[key][0]
    stp = operators.predictors[key]
    q0 = state.dofs[element]
    dofs = predict_batch(stp, q0[None])[0]
    return system_residual(stp, q0, dofs)


def simulate(
    mesh: Mesh,
    materials: Material | tuple[Material, ...],
    order: int,
    initial_dofs: np.ndarray,
    t_end: float,
    *,
    cfl_factor: float = DEFAULT_CFL,
    material_of: np.ndarray | None = None,
    log_conservation: bool = False,
    residual_check_every: int = 0,
    on_step: Callable[[SimulationState], None] | None = None,
) -> tuple[SimulationState, RunDiagnostics]:
    """Run to ``t_end`` in ceil(t_end / dt) steps, shortening the last one."""
    if not t_end >= 0 or not math.isfinite(t_end):
        raise ValidationError(f"t_end must be non-negative, got {t_end}")
    expected = (mesh.element_count, QUANTITIES, build_reference_operators(order).count)
    if initial_dofs.shape != expected:
        raise ValidationError(f"initial dofs must have shape {expected}, got {initial_dofs.shape}")
    if t_end == 0:
        state = SimulationState(dofs=np.array(initial_dofs, dtype=float))
        diagnostics = RunDiagnostics()
        if log_conservation:
            diagnostics.conservation.append((0, 0.0, domain_integrals(mesh, state.dofs)))
        return state, diagnostics

    dt = cfl_timestep(mesh, materials, order, cfl_factor, material_of)
    steps = max(1, math.ceil(t_end / dt - 1e-9))
    last_dt = t_end - (steps - 1) * dt

    operators = build_dg_operators(mesh, materials, order, dt, material_of)
    final_operators = operators
    if not math.isclose(last_dt, dt, rel_tol=1e-12):
        final_operators = build_dg_operators(
            mesh, materials, order, last_dt, material_of, fluxes=operators.fluxes
        )

    state = SimulationState(dofs=np.array(initial_dofs, dtype=float), dt=dt)
    diagnostics = RunDiagnostics(dt=dt)
    if log_conservation:
        diagnostics.conservation.append((0, 0.0, domain_integrals(mesh, state.dofs)))

    log.info("simulation_started", elements=mesh.element_count, order=order, steps=steps)
    for index in range(steps):
        current = final_operators if index == steps - 1 else operators
        if residual_check_every and state.step_count % residual_check_every == 0:
            residual = _sample_residual(state, current)
            diagnostics.residuals.append((state.step_count, residual))
            log.debug("residual_sampled", step=state.step_count, residual=residual)

        state = step(state, current)
        if log_conservation:
            diagnostics.conservation.append(
                (state.step_count, state.time, domain_integrals(mesh, state.dofs))
            )
        if on_step is not None:
            on_step(state)
        log.debug("step_completed", step=state.step_count, time=state.time)

    state = replace(state, time=t_end)
    diagnostics.steps = state.step_count
    diagnostics.final_time = state.time
    log.info("simulation_completed", steps=state.step_count, final_time=state.time)
    return state, diagnostics
