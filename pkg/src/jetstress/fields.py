"""Coefficient field constructors: polynomials, sine modes, compact bumps.

The seeded families here feed both the scenario runner and the test suite,
so the randomization is always through an explicit generator.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from .chart import ScalarField


def constant_field(c: float) -> ScalarField:
    c = float(c)
    return ScalarField(lambda X: c, smoothness=99)


def coordinate_field(axis: int) -> ScalarField:
    return ScalarField(lambda X: float(X[axis]), smoothness=99)


def polynomial_field(coeffs) -> ScalarField:
    """Multivariate polynomial; coeffs[i0, ..., i_{d-1}] multiplies
    X0^i0 * ... * X_{d-1}^i_{d-1}."""
    coeffs = np.asarray(coeffs, dtype=float)

    def ev(X: np.ndarray) -> float:
        v = coeffs
        for xk in X:
            v = P.polyval(xk, v)
        return float(v)

    return ScalarField(ev, smoothness=99)


def random_polynomial(rng: np.random.Generator, dim: int, degree: int = 3,
                      scale: float = 1.0) -> ScalarField:
    coeffs = rng.uniform(-scale, scale, size=(degree + 1,) * dim)
    return polynomial_field(coeffs)


def sine_field(modes: Sequence[tuple[float, Sequence[int], float]]) -> ScalarField:
    """Sum of amp * sin(2*pi*(k . X) + phase) over (amp, k, phase) triples.

    Integer wavevectors keep the field periodic on the unit box.
    """
    modes = [(float(a), np.asarray(k, dtype=float), float(p)) for a, k, p in modes]

    def ev(X: np.ndarray) -> float:
        return float(sum(a * math.sin(2.0 * math.pi * np.dot(k, X) + p) for a, k, p in modes))

    return ScalarField(ev, smoothness=99)


def random_sine_field(rng: np.random.Generator, dim: int, n_modes: int = 2,
                      max_mode: int = 2) -> ScalarField:
    modes = []
    for _ in range(n_modes):
        amp = rng.uniform(-1.0, 1.0)
        k = rng.integers(-max_mode, max_mode + 1, size=dim)
        if not np.any(k):
            k[0] = 1
        phase = rng.uniform(0.0, 2.0 * math.pi)
        modes.append((amp, k, phase))
    return sine_field(modes)


def _bump1d(t: float, a: float, b: float) -> float:
    u = (2.0 * t - (a + b)) / (b - a)
    if abs(u) >= 1.0:
        return 0.0
    return math.exp(1.0 - 1.0 / (1.0 - u * u))


def bump_field(support: Sequence[Sequence[float]], amplitude: float = 1.0) -> ScalarField:
    """C-infinity bump, identically zero outside the product of per-axis
    supports, equal to `amplitude` at the center."""
    support = [(float(a), float(b)) for a, b in support]
    amplitude = float(amplitude)

    def ev(X: np.ndarray) -> float:
        v = amplitude
        for t, (a, b) in zip(X, support):
            v *= _bump1d(float(t), a, b)
            if v == 0.0:
                return 0.0
        return v

    return ScalarField(ev, smoothness=99)


def poly_bump_field(support: Sequence[Sequence[float]], amplitude: float = 1.0,
                    power: int = 6) -> ScalarField:
    """Piecewise-polynomial compact bump ((t-a)(b-t))^power per axis, scaled
    to `amplitude` at the center; C^(power-1) across the support edges.

    Unlike the exponential bump this stays exactly Gauss-integrable: with
    quadrature panels aligned to the support edges the integrand is a
    polynomial on every panel.
    """
    support = [(float(a), float(b)) for a, b in support]
    amplitude = float(amplitude)

    def ev(X: np.ndarray) -> float:
        v = amplitude
        for t, (a, b) in zip(X, support):
            t = float(t)
            if t <= a or t >= b:
                return 0.0
            half = 0.5 * (b - a)
            v *= ((t - a) * (b - t) / (half * half)) ** power
        return v

    return ScalarField(ev, smoothness=power - 1)


def scaled(f: ScalarField, c: float) -> ScalarField:
    c = float(c)
    return ScalarField(lambda X: c * f(X), smoothness=f.smoothness)


def field_sum(*fs: ScalarField) -> ScalarField:
    return ScalarField(lambda X: sum(f(X) for f in fs),
                       smoothness=min(f.smoothness for f in fs))
