"""Variational and traction stress densities and their calculus.

Implements the pairing with velocity jets, the traction extraction, the
exterior jet operator, the divergence, and the Cauchy boundary mapping, all
in adapted chart components.  Stress components are fields over the base
(already composed with the configuration jet); base derivatives are total
derivatives of the composed coefficient fields.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chart import (
    BoundaryFace,
    ChartDomain,
    FDScheme,
    QuadratureRule,
    ScalarField,
    integrate_volume,
    partial_derivative,
)
from .forces import BodyForceDensity, SurfaceForceDensity
from .sections import VelocityField, VelocityJet, jet_prolong_velocity


@dataclass(frozen=True)
class VariationalStressDensity:
    """Component record (s_i, s_i^a): s_lower pairs with velocity values,
    s_mixed (shape m x d) with velocity gradients, producing a dX coefficient."""

    s_lower: tuple[ScalarField, ...]
    s_mixed: tuple[tuple[ScalarField, ...], ...]

    def __post_init__(self) -> None:
        if len(self.s_mixed) != len(self.s_lower):
            raise ValueError("s_lower and s_mixed fiber dimensions differ")

    @property
    def fiber_dim(self) -> int:
        return len(self.s_lower)

    @property
    def base_dim(self) -> int:
        return len(self.s_mixed[0])


@dataclass(frozen=True)
class TractionStressDensity:
    """Components tau_i^a of dx^i tensor (e_a interior-product dX)."""

    tau: tuple[tuple[ScalarField, ...], ...]

    @property
    def fiber_dim(self) -> int:
        return len(self.tau)

    @property
    def base_dim(self) -> int:
        return len(self.tau[0])


def stress_pairing(s: VariationalStressDensity, eta: VelocityJet, X) -> float:
    """Density coefficient s_i * xdot^i + s_i^a * xdot'^i_a at one point."""
    if s.fiber_dim != eta.fiber_dim:
        raise ValueError("fiber dimensions differ")
    xd, xdp = eta(X)
    if xdp.shape != (s.fiber_dim, s.base_dim):
        raise ValueError("gradient block shape mismatch")
    total = 0.0
    for i in range(s.fiber_dim):
        total += s.s_lower[i](X) * xd[i]
        for a in range(s.base_dim):
            total += s.s_mixed[i][a](X) * xdp[i, a]
    return float(total)


def virtual_power_of_stress(s: VariationalStressDensity, v: VelocityField,
                            dom: ChartDomain,
                            rule: QuadratureRule = QuadratureRule(),
                            scheme: FDScheme = FDScheme()) -> float:
    """Virtual power expended by the stress on a velocity field: the volume
    integral of the pairing with the jet prolongation of v."""
    eta = jet_prolong_velocity(v, dom, scheme)
    return integrate_volume(lambda X: stress_pairing(s, eta, X), dom, rule)


def traction_extract(s: VariationalStressDensity) -> TractionStressDensity:
    """Block projection keeping the mixed components: tau_i^a = s_i^a."""
    return TractionStressDensity(s.s_mixed)


def exterior_jet(tau: TractionStressDensity, dom: ChartDomain,
                 scheme: FDScheme = FDScheme()) -> VariationalStressDensity:
    """The operator defined by pairing as the exterior derivative of tau
    composed with a velocity: components (sum_a d_a tau_i^a, tau_i^a)."""
    def lower(i: int) -> ScalarField:
        return ScalarField(
            lambda X, i=i: sum(partial_derivative(tau.tau[i][a], a, X, dom, scheme)
                               for a in range(tau.base_dim)))

    return VariationalStressDensity(
        tuple(lower(i) for i in range(tau.fiber_dim)),
        tau.tau,
    )


def divergence(s: VariationalStressDensity, dom: ChartDomain,
               scheme: FDScheme = FDScheme()) -> BodyForceDensity:
    """Generalized stress divergence with components sum_a d_a s_i^a - s_i."""
    def comp(i: int) -> ScalarField:
        return ScalarField(
            lambda X, i=i: sum(partial_derivative(s.s_mixed[i][a], a, X, dom, scheme)
                               for a in range(s.base_dim)) - s.s_lower[i](X))

    return BodyForceDensity(tuple(comp(i) for i in range(s.fiber_dim)))


def cauchy_face_components(tau: TractionStressDensity, face: BoundaryFace,
                           dom: ChartDomain) -> tuple[ScalarField, ...]:
    """Boundary traction components on one face: the face-axis block of tau,
    restricted to the face, with the orientation sign folded in."""
    if dom.is_periodic(face.axis):
        raise ValueError(f"axis {face.axis} is periodic; no boundary face there")
    sgn = face.induced_sign
    return tuple(ScalarField(lambda X, g=tau.tau[i][face.axis]: sgn * g(X))
                 for i in range(tau.fiber_dim))


def cauchy_boundary(tau: TractionStressDensity, face: BoundaryFace,
                    dom: ChartDomain) -> SurfaceForceDensity:
    """Cauchy mapping on a single face, as a surface force density."""
    return SurfaceForceDensity({face: cauchy_face_components(tau, face, dom)})


def cauchy_all_faces(tau: TractionStressDensity, dom: ChartDomain) -> SurfaceForceDensity:
    """Cauchy mapping on every boundary face of the chart."""
    return SurfaceForceDensity(
        {face: cauchy_face_components(tau, face, dom) for face in dom.faces()})
