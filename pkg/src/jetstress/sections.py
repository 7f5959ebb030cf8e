"""Configurations, velocity fields, jet sections, and velocity jets.

Fibers are represented linearly: a configuration is m scalar component
fields over the chart, and a first jet carries the value block x together
with the gradient block xprime of shape (m, d).  Deformation jets need not
be holonomic; the gradient block is stored, not recomputed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .chart import ChartDomain, FDScheme, ScalarField, partial_derivative, uniform_grid


@dataclass(frozen=True)
class FiberSpec:
    fiber_dim: int

    def __post_init__(self) -> None:
        if self.fiber_dim < 1:
            raise ValueError("fiber dimension must be at least 1")


@dataclass(frozen=True)
class JetPoint:
    """Jet coordinates (X, x, xprime) at one base point; xprime has shape (m, d)."""

    X: np.ndarray
    x: np.ndarray
    xprime: np.ndarray


@dataclass(frozen=True)
class Configuration:
    components: tuple[ScalarField, ...]
    smoothness: int = 2

    @property
    def fiber_dim(self) -> int:
        return len(self.components)

    def value(self, X) -> np.ndarray:
        return np.array([f(X) for f in self.components])


@dataclass(frozen=True)
class VelocityField:
    """Vertical variation of a configuration; m C1 component fields."""

    components: tuple[ScalarField, ...]

    @property
    def fiber_dim(self) -> int:
        return len(self.components)

    def value(self, X) -> np.ndarray:
        return np.array([f(X) for f in self.components])


@dataclass(frozen=True)
class JetSection:
    """Evaluable deformation jet X -> (x, xprime)."""

    evaluator: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]
    fiber_dim: int
    holonomic: bool = False

    def __call__(self, X) -> tuple[np.ndarray, np.ndarray]:
        x, xp = self.evaluator(np.asarray(X, dtype=float))
        return np.asarray(x, dtype=float), np.asarray(xp, dtype=float)

    def at(self, X) -> JetPoint:
        X = np.asarray(X, dtype=float)
        x, xp = self(X)
        return JetPoint(X, x, xp)


@dataclass(frozen=True)
class VelocityJet:
    """Evaluable velocity jet X -> (xdot, xdotprime)."""

    evaluator: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]
    fiber_dim: int

    def __call__(self, X) -> tuple[np.ndarray, np.ndarray]:
        xd, xdp = self.evaluator(np.asarray(X, dtype=float))
        return np.asarray(xd, dtype=float), np.asarray(xdp, dtype=float)


def jet_prolong_config(kappa: Configuration, dom: ChartDomain,
                       scheme: FDScheme = FDScheme()) -> JetSection:
    """First jet of a configuration: x = kappa(X), xprime = base gradient of kappa."""

    def ev(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        x = kappa.value(X)
        xp = np.array([[partial_derivative(f, a, X, dom, scheme)
                        for a in range(dom.dim)] for f in kappa.components])
        return x, xp

    return JetSection(ev, kappa.fiber_dim, holonomic=True)


def jet_prolong_velocity(v: VelocityField, dom: ChartDomain,
                         scheme: FDScheme = FDScheme()) -> VelocityJet:
    """Jet prolongation of a velocity field: xdot = v(X), xdotprime = base gradient of v."""

    def ev(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        xd = v.value(X)
        xdp = np.array([[partial_derivative(f, a, X, dom, scheme)
                         for a in range(dom.dim)] for f in v.components])
        return xd, xdp

    return VelocityJet(ev, v.fiber_dim)


def iso_K(X, x, xprime, xdot, xdotprime):
    """Coordinate shuffle identifying vertical jet-bundle vectors with jets of
    vertical vectors: (X, x, x', xdot, xdot') -> (X, x, xdot, x', xdot')."""
    if np.shape(x) != np.shape(xdot) or np.shape(xprime) != np.shape(xdotprime):
        raise ValueError("block shapes inconsistent")
    return X, x, xdot, xprime, xdotprime


def iso_K_inv(X, x, xdot, xprime, xdotprime):
    """Inverse shuffle; iso_K_inv(iso_K(r)) round-trips bitwise."""
    if np.shape(x) != np.shape(xdot) or np.shape(xprime) != np.shape(xdotprime):
        raise ValueError("block shapes inconsistent")
    return X, x, xprime, xdot, xdotprime


def holonomy_residual(xi: JetSection, dom: ChartDomain,
                      scheme: FDScheme = FDScheme(), samples: int = 17) -> float:
    """Sup over a probe grid of the mismatch between the stored gradient block
    and the finite-difference gradient of the value block."""
    m = xi.fiber_dim
    comps = [ScalarField(lambda X, i=i: xi(X)[0][i]) for i in range(m)]
    worst = 0.0
    for X in uniform_grid(dom, samples):
        _, xp = xi(X)
        fd = np.array([[partial_derivative(comps[i], a, X, dom, scheme)
                        for a in range(dom.dim)] for i in range(m)])
        worst = max(worst, float(np.max(np.abs(xp - fd))))
    return worst
