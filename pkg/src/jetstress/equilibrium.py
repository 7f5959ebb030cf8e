"""Equilibrium residuals and weak/strong consistency of the stress representation."""
from __future__ import annotations

import numpy as np

from .chart import (
    ChartDomain,
    FDScheme,
    QuadratureRule,
    ScalarField,
    face_grid,
    integrate_face,
    integrate_volume,
    uniform_grid,
)
from .forces import BodyForceDensity, ForceFunctional
from .sections import VelocityField
from .stress import (
    VariationalStressDensity,
    cauchy_all_faces,
    cauchy_face_components,
    divergence,
    traction_extract,
    virtual_power_of_stress,
)


def force_from_stress(s: VariationalStressDensity, dom: ChartDomain,
                      scheme: FDScheme = FDScheme()) -> ForceFunctional:
    """Manufacture the continuous force a stress represents: body density
    -div(s) and boundary tractions from the Cauchy mapping."""
    div = divergence(s, dom, scheme)
    body = BodyForceDensity(tuple(ScalarField(lambda X, g=g: -g(X))
                                  for g in div.components))
    return ForceFunctional(body, cauchy_all_faces(traction_extract(s), dom))


def equilibrium_residuals(s: VariationalStressDensity, f: ForceFunctional,
                          dom: ChartDomain,
                          scheme: FDScheme = FDScheme(),
                          samples: int = 17) -> tuple[float, float]:
    """Strong-form residuals: sup |div(s) + b| on an interior lattice and
    sup |t - Cauchy(P(s))| over face lattices."""
    div = divergence(s, dom, scheme)
    interior = 0.0
    for X in uniform_grid(dom, samples):
        r = div.value(X) + f.body.value(X)
        interior = max(interior, float(np.max(np.abs(r))))

    tau = traction_extract(s)
    boundary = 0.0
    for face in dom.faces():
        cf = cauchy_face_components(tau, face, dom)
        tf = f.surface.on_face(face, s.fiber_dim)
        for X in face_grid(dom, face, samples):
            r = max(abs(ti(X) - ci(X)) for ti, ci in zip(tf, cf))
            boundary = max(boundary, r)
    return interior, boundary


def weak_strong_consistency(s: VariationalStressDensity, v: VelocityField,
                            dom: ChartDomain,
                            rule: QuadratureRule = QuadratureRule(),
                            scheme: FDScheme = FDScheme()) -> float:
    """|integral of s paired with j1(v)  minus  (-integral of div(s).v plus the
    boundary Cauchy term)|, the two sides computed by independent code paths."""
    lhs = virtual_power_of_stress(s, v, dom, rule, scheme)

    div = divergence(s, dom, scheme)

    def div_coeff(X: np.ndarray) -> float:
        return float(np.dot(div.value(X), v.value(X)))

    rhs = -integrate_volume(div_coeff, dom, rule)

    tau = traction_extract(s)
    for face in dom.faces():
        cf = cauchy_face_components(tau, face, dom)

        def face_coeff(X: np.ndarray, cf=cf) -> float:
            return float(sum(ci(X) * vi(X) for ci, vi in zip(cf, v.components)))

        rhs += integrate_face(face_coeff, face, dom, rule)
    return abs(lhs - rhs)
