"""Constitutive densities, hyperelasticity from a Lagrangian, loadings, and
the strong-form boundary-value residual.

Vertical (fiber and jet) derivatives are central differences with a step
scaled relative to the coordinate magnitude; the pullback along a
configuration jet turns jet-coordinate fields into base fields, after which
all base differentiation is total.

Sign convention for the field equation: the invariant form div(s) + b = 0 is
adopted, so the interior residual is  d_a(psi_i^a along j1 kappa) - psi_i + B_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .chart import (
    BoundaryFace,
    ChartDomain,
    FDScheme,
    QuadratureRule,
    ScalarField,
    face_grid,
    integrate_face,
    integrate_volume,
    partial_derivative,
    uniform_grid,
)
from .forces import BodyForceDensity, SurfaceForceDensity
from .sections import Configuration, JetPoint, VelocityField, jet_prolong_config
from .stress import VariationalStressDensity, virtual_power_of_stress

JetEval = Callable[[JetPoint], float]
FiberEval = Callable[[np.ndarray, np.ndarray], float]  # (X, x) -> real

VERTICAL_STEP = 1e-4


@dataclass(frozen=True)
class ConstitutiveDensity:
    """Jet-coordinate stress assignment: psi_lower[i] and psi_mixed[i][a]
    evaluate at a JetPoint and give the components of the induced
    variational stress density."""

    psi_lower: tuple[JetEval, ...]
    psi_mixed: tuple[tuple[JetEval, ...], ...]

    @property
    def fiber_dim(self) -> int:
        return len(self.psi_lower)

    @property
    def base_dim(self) -> int:
        return len(self.psi_mixed[0])


@dataclass(frozen=True)
class LagrangianDensity:
    """Jet-coordinate scalar whose vertical derivative is a hyperelastic
    constitutive density; assumed C2 in the vertical coordinates."""

    func: JetEval

    def __call__(self, jp: JetPoint) -> float:
        return float(self.func(jp))


@dataclass(frozen=True)
class BodyLoadingDensity:
    """Components B_i(X, x) over the total space; pullback along a
    configuration yields a body force density."""

    components: tuple[FiberEval, ...]

    @property
    def fiber_dim(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class SurfaceLoadingDensity:
    """Per boundary face, components T_i(X, x); orientation sign folded in,
    matching SurfaceForceDensity."""

    components: Mapping[BoundaryFace, tuple[FiberEval, ...]]

    def on_face(self, face: BoundaryFace, fiber_dim: int) -> tuple[FiberEval, ...]:
        if face in self.components:
            return self.components[face]
        return tuple((lambda X, x: 0.0) for _ in range(fiber_dim))


@dataclass(frozen=True)
class PotentialDensities:
    """Configuration-dependent potential densities whose negative vertical
    derivatives are the loading densities."""

    body: FiberEval
    surface: Mapping[BoundaryFace, FiberEval]


def _vstep(value: float, h0: float = VERTICAL_STEP) -> float:
    return h0 * max(1.0, abs(value))


def pullback_constitutive(psi: ConstitutiveDensity, kappa: Configuration,
                          dom: ChartDomain,
                          scheme: FDScheme = FDScheme()) -> VariationalStressDensity:
    """Compose the constitutive components with the jet of the configuration,
    producing stress component fields over the base."""
    jet = jet_prolong_config(kappa, dom, scheme)

    def lower(i: int) -> ScalarField:
        return ScalarField(lambda X, i=i: psi.psi_lower[i](jet.at(X)))

    def mixed(i: int, a: int) -> ScalarField:
        return ScalarField(lambda X, i=i, a=a: psi.psi_mixed[i][a](jet.at(X)))

    return VariationalStressDensity(
        tuple(lower(i) for i in range(psi.fiber_dim)),
        tuple(tuple(mixed(i, a) for a in range(psi.base_dim))
              for i in range(psi.fiber_dim)),
    )


def constitutive_from_lagrangian(L: LagrangianDensity, fiber_dim: int, base_dim: int,
                                 step: float = VERTICAL_STEP) -> ConstitutiveDensity:
    """Vertical gradient of the Lagrangian: psi_i = dL/dx^i and
    psi_i^a = dL/dx'^i_a, by central differences at fixed other jet coordinates."""

    def d_value(i: int) -> JetEval:
        def ev(jp: JetPoint, i=i) -> float:
            h = _vstep(jp.x[i], step)
            xp = jp.x.copy()
            xm = jp.x.copy()
            xp[i] += h
            xm[i] -= h
            return (L(JetPoint(jp.X, xp, jp.xprime)) - L(JetPoint(jp.X, xm, jp.xprime))) / (2 * h)
        return ev

    def d_grad(i: int, a: int) -> JetEval:
        def ev(jp: JetPoint, i=i, a=a) -> float:
            h = _vstep(jp.xprime[i, a], step)
            gp = jp.xprime.copy()
            gm = jp.xprime.copy()
            gp[i, a] += h
            gm[i, a] -= h
            return (L(JetPoint(jp.X, jp.x, gp)) - L(JetPoint(jp.X, jp.x, gm))) / (2 * h)
        return ev

    return ConstitutiveDensity(
        tuple(d_value(i) for i in range(fiber_dim)),
        tuple(tuple(d_grad(i, a) for a in range(base_dim)) for i in range(fiber_dim)),
    )


def loading_from_potential(w: PotentialDensities, fiber_dim: int,
                           step: float = VERTICAL_STEP) -> tuple[BodyLoadingDensity, SurfaceLoadingDensity]:
    """Loading densities as negative vertical derivatives of the potentials."""

    def neg_grad(g: FiberEval, i: int) -> FiberEval:
        def ev(X: np.ndarray, x: np.ndarray, g=g, i=i) -> float:
            h = _vstep(float(x[i]), step)
            xp = np.array(x, dtype=float)
            xm = np.array(x, dtype=float)
            xp[i] += h
            xm[i] -= h
            return -(g(X, xp) - g(X, xm)) / (2 * h)
        return ev

    body = BodyLoadingDensity(tuple(neg_grad(w.body, i) for i in range(fiber_dim)))
    surf = SurfaceLoadingDensity(
        {face: tuple(neg_grad(g, i) for i in range(fiber_dim))
         for face, g in w.surface.items()})
    return body, surf


def pullback_body_loading(B: BodyLoadingDensity, kappa: Configuration) -> BodyForceDensity:
    return BodyForceDensity(tuple(
        ScalarField(lambda X, g=g: g(X, kappa.value(X))) for g in B.components))


def pullback_surface_loading(T: SurfaceLoadingDensity, kappa: Configuration,
                             dom: ChartDomain) -> SurfaceForceDensity:
    comps = {}
    for face in dom.faces():
        gs = T.on_face(face, kappa.fiber_dim)
        comps[face] = tuple(ScalarField(lambda X, g=g: g(X, kappa.value(X))) for g in gs)
    return SurfaceForceDensity(comps)


def total_energy(kappa: Configuration, L: LagrangianDensity | None,
                 w: PotentialDensities | None, dom: ChartDomain,
                 rule: QuadratureRule = QuadratureRule(),
                 scheme: FDScheme = FDScheme()) -> float:
    """Stored energy along the configuration jet plus the loading potential."""
    total = 0.0
    if L is not None:
        jet = jet_prolong_config(kappa, dom, scheme)
        total += integrate_volume(lambda X: L(jet.at(X)), dom, rule)
    if w is not None:
        total += integrate_volume(lambda X: w.body(X, kappa.value(X)), dom, rule)
        for face, g in w.surface.items():
            total += integrate_face(lambda X: g(X, kappa.value(X)), face, dom, rule)
    return total


def energy_variation_residual(kappa: Configuration, v: VelocityField,
                              L: LagrangianDensity, dom: ChartDomain,
                              rule: QuadratureRule = QuadratureRule(),
                              scheme: FDScheme = FDScheme(),
                              t_step: float = VERTICAL_STEP) -> float:
    """|directional derivative of the stored energy along v  minus  the virtual
    power of the hyperelastic stress on v|, the two sides independent."""

    def energy_at(t: float) -> float:
        comps = tuple(ScalarField(lambda X, k=k, vk=vk, t=t: k(X) + t * vk(X))
                      for k, vk in zip(kappa.components, v.components))
        return total_energy(Configuration(comps, kappa.smoothness), L, None, dom, rule, scheme)

    lhs = (energy_at(t_step) - energy_at(-t_step)) / (2 * t_step)

    psi = constitutive_from_lagrangian(L, kappa.fiber_dim, dom.dim)
    s = pullback_constitutive(psi, kappa, dom, scheme)
    rhs = virtual_power_of_stress(s, v, dom, rule, scheme)
    return abs(lhs - rhs)


def bvp_residual(kappa: Configuration, psi: ConstitutiveDensity,
                 body_loading: BodyLoadingDensity,
                 surface_loading: SurfaceLoadingDensity,
                 dom: ChartDomain,
                 scheme: FDScheme = FDScheme(),
                 samples: int = 17) -> tuple[float, float]:
    """Strong-form residuals of the boundary-value problem at kappa.

    Interior: sup |d_a(psi_i^a along j1 kappa) - psi_i + B_i| over the probe
    lattice.  Boundary: per face, sup |sign * psi_i^(face axis) - T_i|.
    """
    if kappa.smoothness < 2:
        raise ValueError("interior residual needs a C2 configuration")
    s = pullback_constitutive(psi, kappa, dom, scheme)
    m, d = s.fiber_dim, s.base_dim

    interior = 0.0
    for X in uniform_grid(dom, samples):
        kx = kappa.value(X)
        for i in range(m):
            r = sum(partial_derivative(s.s_mixed[i][a], a, X, dom, scheme) for a in range(d))
            r -= s.s_lower[i](X)
            r += body_loading.components[i](X, kx)
            interior = max(interior, abs(r))

    boundary = 0.0
    for face in dom.faces():
        ts = surface_loading.on_face(face, m)
        for X in face_grid(dom, face, samples):
            kx = kappa.value(X)
            for i in range(m):
                r = face.induced_sign * s.s_mixed[i][face.axis](X) - ts[i](X, kx)
                boundary = max(boundary, abs(r))
    return interior, boundary
