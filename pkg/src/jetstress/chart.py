"""Adapted base chart: box domains, finite differences, tensor quadrature, Stokes check.

Everything downstream (stress identities, equilibrium, the boundary-value
residuals) integrates by parts at some point; the Stokes residual computed
here is the oracle those identities are checked against.

Axes are 0-based.  A field is any callable taking a length-d coordinate
array and returning a float.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

Evaluator = Callable[[np.ndarray], float]

BOUNDARY = "boundary"
PERIODIC = "periodic"


@dataclass(frozen=True)
class BoundaryFace:
    """One face of the chart box, on a non-periodic axis."""

    axis: int
    side: str  # "lower" | "upper"

    def __post_init__(self) -> None:
        if self.side not in ("lower", "upper"):
            raise ValueError(f"side must be 'lower' or 'upper', got {self.side!r}")

    @property
    def induced_sign(self) -> float:
        """Orientation sign of the face: +1 upper, -1 lower.

        Only the sign on the adapted (upper) face is forced by the chart
        convention; the lower-face sign is the one that makes the Stokes
        identity hold globally (see stokes_residual).
        """
        return 1.0 if self.side == "upper" else -1.0


@dataclass(frozen=True)
class ChartDomain:
    """Axis-aligned box with per-axis boundary/periodic flags.

    The volume coefficient convention is dX = dx^0 ^ ... ^ dx^(d-1) with
    coefficient 1, standard coordinate orientation.
    """

    bounds: tuple[tuple[float, float], ...]
    axis_kind: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.bounds) != len(self.axis_kind):
            raise ValueError("bounds and axis_kind length mismatch")
        if not self.bounds:
            raise ValueError("domain needs at least one axis")
        for lo, hi in self.bounds:
            if not lo < hi:
                raise ValueError(f"empty axis interval [{lo}, {hi}]")
        for kind in self.axis_kind:
            if kind not in (BOUNDARY, PERIODIC):
                raise ValueError(f"unknown axis kind {kind!r}")

    @classmethod
    def box(cls, bounds: Iterable[Sequence[float]], periodic: Iterable[int] = ()) -> "ChartDomain":
        bounds = tuple((float(a), float(b)) for a, b in bounds)
        per = set(periodic)
        kinds = tuple(PERIODIC if i in per else BOUNDARY for i in range(len(bounds)))
        return cls(bounds, kinds)

    @classmethod
    def unit(cls, dim: int, periodic: Iterable[int] = ()) -> "ChartDomain":
        return cls.box([(0.0, 1.0)] * dim, periodic)

    @property
    def dim(self) -> int:
        return len(self.bounds)

    def is_periodic(self, axis: int) -> bool:
        return self.axis_kind[axis] == PERIODIC

    def extent(self, axis: int) -> float:
        lo, hi = self.bounds[axis]
        return hi - lo

    def faces(self) -> Iterator[BoundaryFace]:
        for axis in range(self.dim):
            if not self.is_periodic(axis):
                yield BoundaryFace(axis, "lower")
                yield BoundaryFace(axis, "upper")

    def contains(self, X: np.ndarray, tol: float = 1e-12) -> bool:
        X = np.asarray(X, dtype=float)
        return all(lo - tol <= x <= hi + tol for x, (lo, hi) in zip(X, self.bounds))


@dataclass(frozen=True)
class ScalarField:
    """Deterministic coefficient field over the chart, tagged with smoothness C^k."""

    func: Evaluator
    smoothness: int = 2

    def __call__(self, X) -> float:
        return float(self.func(np.asarray(X, dtype=float)))


def as_field(f, smoothness: int = 2) -> ScalarField:
    if isinstance(f, ScalarField):
        return f
    return ScalarField(f, smoothness)


@dataclass(frozen=True)
class FDScheme:
    """Central finite differences of order 2 or 4, with one-sided fallback
    of the same order near boundary faces."""

    step: float = 1e-3
    order: int = 4

    def __post_init__(self) -> None:
        if self.order not in (2, 4):
            raise ValueError("FD order must be 2 or 4")
        if self.step <= 0:
            raise ValueError("FD step must be positive")


@lru_cache(maxsize=None)
def _fd_weights(offsets: tuple[int, ...]) -> np.ndarray:
    """First-derivative weights for integer offsets at unit step."""
    n = len(offsets)
    A = np.array([[o**k for o in offsets] for k in range(n)], dtype=float)
    rhs = np.zeros(n)
    rhs[1] = 1.0
    return np.linalg.solve(A, rhs)


def _stencil_offsets(p_a: float, lo: float, hi: float, h: float, order: int) -> tuple[int, ...]:
    r = order // 2
    offsets = np.arange(-r, r + 1)
    # shift the stencil until all probe points lie inside [lo, hi]
    shift = 0
    while p_a + (offsets[0] + shift) * h < lo - 1e-14:
        shift += 1
    while p_a + (offsets[-1] + shift) * h > hi + 1e-14:
        shift -= 1
    return tuple(int(o + shift) for o in offsets)


def partial_derivative(
    f: Evaluator,
    axis: int,
    p,
    dom: ChartDomain,
    scheme: FDScheme = FDScheme(),
) -> float:
    """Finite-difference estimate of the base derivative of f along `axis` at p.

    Wraps coordinates on periodic axes; uses one-sided stencils of the same
    order within stencil reach of a boundary face.
    """
    d = dom.dim
    if not 0 <= axis < d:
        raise ValueError(f"axis {axis} out of range for dim {d}")
    h = scheme.step
    lo, hi = dom.bounds[axis]
    if h * scheme.order >= hi - lo:
        raise ValueError("FD step too large for axis extent")
    p = np.asarray(p, dtype=float)

    if dom.is_periodic(axis):
        r = scheme.order // 2
        offsets = tuple(range(-r, r + 1))
        length = hi - lo

        def probe(o: int) -> float:
            X = p.copy()
            X[axis] = lo + (X[axis] + o * h - lo) % length
            return float(f(X))

    else:
        offsets = _stencil_offsets(p[axis], lo, hi, h, scheme.order)

        def probe(o: int) -> float:
            X = p.copy()
            X[axis] = min(max(X[axis] + o * h, lo), hi)
            return float(f(X))

    w = _fd_weights(offsets)
    return float(sum(wj * probe(o) for wj, o in zip(w, offsets)) / h)


@dataclass(frozen=True)
class QuadratureRule:
    """Tensor-product Gauss-Legendre rule; `panels` splits each axis into
    equal composite cells (panels=1 is the plain rule)."""

    order: int = 8
    panels: int = 1

    def __post_init__(self) -> None:
        if self.order < 1 or self.panels < 1:
            raise ValueError("quadrature order and panels must be positive")

    def axis_nodes(self, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
        ref_x, ref_w = np.polynomial.legendre.leggauss(self.order)
        xs, ws = [], []
        width = (hi - lo) / self.panels
        for k in range(self.panels):
            a = lo + k * width
            xs.append(a + (ref_x + 1.0) * 0.5 * width)
            ws.append(ref_w * 0.5 * width)
        return np.concatenate(xs), np.concatenate(ws)


def _tensor_nodes(axes: Sequence[tuple[np.ndarray, np.ndarray]]) -> tuple[np.ndarray, np.ndarray]:
    pts = []
    wts = []
    for combo in itertools.product(*[range(len(x)) for x, _ in axes]):
        pts.append([axes[a][0][i] for a, i in enumerate(combo)])
        wts.append(math.prod(axes[a][1][i] for a, i in enumerate(combo)))
    return np.asarray(pts, dtype=float), np.asarray(wts, dtype=float)


def volume_nodes(dom: ChartDomain, rule: QuadratureRule) -> tuple[np.ndarray, np.ndarray]:
    axes = [rule.axis_nodes(lo, hi) for lo, hi in dom.bounds]
    return _tensor_nodes(axes)


def integrate_volume(coeff: Evaluator, dom: ChartDomain, rule: QuadratureRule = QuadratureRule()) -> float:
    """Quadrature of a volume-form coefficient against dX over the box."""
    pts, wts = volume_nodes(dom, rule)
    vals = np.fromiter((float(coeff(x)) for x in pts), dtype=float, count=len(pts))
    return float(np.dot(wts, vals))


def face_nodes(dom: ChartDomain, face: BoundaryFace, rule: QuadratureRule) -> tuple[np.ndarray, np.ndarray]:
    lo, hi = dom.bounds[face.axis]
    pinned = lo if face.side == "lower" else hi
    axes = []
    for a, (alo, ahi) in enumerate(dom.bounds):
        if a == face.axis:
            axes.append((np.array([pinned]), np.array([1.0])))
        else:
            axes.append(rule.axis_nodes(alo, ahi))
    return _tensor_nodes(axes)


def integrate_face(coeff: Evaluator, face: BoundaryFace, dom: ChartDomain,
                   rule: QuadratureRule = QuadratureRule()) -> float:
    """Unsigned quadrature of a (d-1)-form coefficient over one face, against
    the interior product of the face axis with dX."""
    pts, wts = face_nodes(dom, face, rule)
    vals = np.fromiter((float(coeff(x)) for x in pts), dtype=float, count=len(pts))
    return float(np.dot(wts, vals))


def integrate_boundary(coeff: Evaluator, face: BoundaryFace, dom: ChartDomain,
                       rule: QuadratureRule = QuadratureRule()) -> float:
    """Oriented face integral: induced_sign times the unsigned face quadrature."""
    if dom.is_periodic(face.axis):
        raise ValueError(f"axis {face.axis} is periodic and has no boundary faces")
    return face.induced_sign * integrate_face(coeff, face, dom, rule)


def stokes_residual(
    omega: Sequence[Evaluator],
    dom: ChartDomain,
    rule: QuadratureRule = QuadratureRule(),
    scheme: FDScheme = FDScheme(),
) -> float:
    """|volume integral of the divergence - oriented boundary sum| for the
    (d-1)-form with components omega[a] against (e_a interior-product dX).

    Periodic axes contribute no faces; their divergence terms integrate to
    zero for periodic data.
    """
    if len(omega) != dom.dim:
        raise ValueError("need one component per axis")

    def div_coeff(X: np.ndarray) -> float:
        return sum(partial_derivative(omega[a], a, X, dom, scheme) for a in range(dom.dim))

    lhs = integrate_volume(div_coeff, dom, rule)
    rhs = sum(integrate_boundary(omega[f.axis], f, dom, rule) for f in dom.faces())
    return abs(lhs - rhs)


def uniform_grid(dom: ChartDomain, samples: int = 17, margin: float = 0.0) -> np.ndarray:
    """Uniform probe lattice, `samples` points per axis; `margin` clips off
    the boundary on non-periodic axes, periodic axes drop the duplicate endpoint."""
    axes = []
    for a, (lo, hi) in enumerate(dom.bounds):
        if dom.is_periodic(a):
            axes.append(np.linspace(lo, hi, samples, endpoint=False))
        else:
            axes.append(np.linspace(lo + margin, hi - margin, samples))
    return np.asarray(list(itertools.product(*axes)), dtype=float)


def face_grid(dom: ChartDomain, face: BoundaryFace, samples: int = 17, margin: float = 0.0) -> np.ndarray:
    """Uniform probe lattice on one boundary face."""
    lo, hi = dom.bounds[face.axis]
    pinned = lo if face.side == "lower" else hi
    axes = []
    for a, (alo, ahi) in enumerate(dom.bounds):
        if a == face.axis:
            axes.append(np.array([pinned]))
        elif dom.is_periodic(a):
            axes.append(np.linspace(alo, ahi, samples, endpoint=False))
        else:
            axes.append(np.linspace(alo + margin, ahi - margin, samples))
    return np.asarray(list(itertools.product(*axes)), dtype=float)
