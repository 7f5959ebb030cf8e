import numpy as np
import pytest

from jetstress import fields
from jetstress.chart import (
    BoundaryFace,
    ChartDomain,
    FDScheme,
    QuadratureRule,
    ScalarField,
    uniform_grid,
)
from jetstress.sections import VelocityField, VelocityJet, jet_prolong_velocity
from jetstress.stress import (
    TractionStressDensity,
    VariationalStressDensity,
    cauchy_boundary,
    cauchy_face_components,
    divergence,
    exterior_jet,
    stress_pairing,
    traction_extract,
    virtual_power_of_stress,
)

UNIT1 = ChartDomain.unit(1)
UNIT2 = ChartDomain.unit(2)


def const_stress(lower, mixed):
    return VariationalStressDensity(
        tuple(fields.constant_field(c) for c in lower),
        tuple(tuple(fields.constant_field(c) for c in row) for row in mixed))


def const_jet(xd, xdp):
    xd = np.asarray(xd, dtype=float)
    xdp = np.asarray(xdp, dtype=float)
    return VelocityJet(lambda X: (xd, xdp), len(xd))


def random_stress(rng, d, m, with_lower=True):
    zero = fields.constant_field(0.0)
    lower = tuple(fields.random_polynomial(rng, d, 3) if with_lower else zero
                  for _ in range(m))
    mixed = tuple(tuple(fields.random_polynomial(rng, d, 3) for _ in range(d))
                  for _ in range(m))
    return VariationalStressDensity(lower, mixed)


class TestPairing:
    def test_zero_stress(self):
        s = const_stress([0.0], [[0.0]])
        assert stress_pairing(s, const_jet([5.0], [[7.0]]), [0.5]) == 0.0

    def test_scalar_example(self):
        s = const_stress([2.0], [[3.0]])
        assert stress_pairing(s, const_jet([5.0], [[7.0]]), [0.5]) == pytest.approx(31.0)

    def test_matches_index_loop_oracle(self):
        rng = np.random.default_rng(21)
        d, m = 2, 3
        s = random_stress(rng, d, m)
        v = VelocityField(tuple(fields.random_polynomial(rng, d, 3) for _ in range(m)))
        eta = jet_prolong_velocity(v, UNIT2)
        for X in uniform_grid(UNIT2, 4):
            xd, xdp = eta(X)
            ref = sum(s.s_lower[i](X) * xd[i] for i in range(m))
            ref += sum(s.s_mixed[i][a](X) * xdp[i, a]
                       for i in range(m) for a in range(d))
            assert stress_pairing(s, eta, X) == pytest.approx(ref, abs=1e-13)

    def test_bilinear(self):
        s = const_stress([2.0], [[3.0]])
        s2 = const_stress([4.0], [[6.0]])
        eta = const_jet([5.0], [[7.0]])
        eta2 = const_jet([10.0], [[14.0]])
        base = stress_pairing(s, eta, [0.5])
        assert stress_pairing(s2, eta, [0.5]) == pytest.approx(2 * base)
        assert stress_pairing(s, eta2, [0.5]) == pytest.approx(2 * base)

    def test_fiber_mismatch_rejected(self):
        s = const_stress([1.0, 1.0], [[1.0], [1.0]])
        with pytest.raises(ValueError):
            stress_pairing(s, const_jet([1.0], [[1.0]]), [0.5])


class TestVirtualPower:
    def test_zero(self):
        s = const_stress([0.0], [[0.0]])
        v = VelocityField((fields.coordinate_field(0),))
        assert virtual_power_of_stress(s, v, UNIT1) == 0.0

    def test_gradient_pairing(self):
        # s_1^1 = 1, v = X: power = integral of dv/dX = 1
        s = const_stress([0.0], [[1.0]])
        v = VelocityField((fields.coordinate_field(0),))
        assert virtual_power_of_stress(s, v, UNIT1) == pytest.approx(1.0, abs=1e-10)

    def test_homogeneous_in_stress(self):
        rng = np.random.default_rng(4)
        s = random_stress(rng, 1, 1)
        s2 = VariationalStressDensity(
            tuple(fields.scaled(f, 2.0) for f in s.s_lower),
            tuple(tuple(fields.scaled(f, 2.0) for f in row) for row in s.s_mixed))
        v = VelocityField((fields.random_polynomial(rng, 1, 3),))
        p1 = virtual_power_of_stress(s, v, UNIT1)
        p2 = virtual_power_of_stress(s2, v, UNIT1)
        assert p2 == pytest.approx(2 * p1, rel=1e-12)


class TestTractionExtract:
    def test_keeps_mixed_block(self):
        s = const_stress([9.0], [[4.0]])
        tau = traction_extract(s)
        assert tau.tau[0][0]([0.3]) == 4.0

    def test_zero_mixed(self):
        s = const_stress([9.0], [[0.0]])
        assert traction_extract(s).tau[0][0]([0.3]) == 0.0

    def test_extract_after_exterior_jet_is_identity(self):
        # P(exterior_jet(tau)) hands back the very same component objects
        rng = np.random.default_rng(8)
        tau = TractionStressDensity(
            tuple(tuple(fields.random_polynomial(rng, 2, 3) for _ in range(2))
                  for _ in range(2)))
        back = traction_extract(exterior_jet(tau, UNIT2))
        assert back.tau is tau.tau


class TestExteriorJet:
    def test_constant_traction(self):
        tau = TractionStressDensity(((fields.constant_field(2.0),
                                      fields.constant_field(-1.0)),))
        s = exterior_jet(tau, UNIT2)
        assert abs(s.s_lower[0]([0.4, 0.6])) <= 1e-11
        assert s.s_mixed[0][0]([0.4, 0.6]) == 2.0

    def test_coordinate_traction(self):
        # tau^1 = X1, tau^2 = X2: lower block is the plain divergence, 2
        tau = TractionStressDensity(((fields.coordinate_field(0),
                                      fields.coordinate_field(1)),))
        s = exterior_jet(tau, UNIT2)
        assert s.s_lower[0]([0.4, 0.6]) == pytest.approx(2.0, abs=1e-9)

    def test_defining_pairing_identity(self):
        # pairing of exterior_jet(tau) with j1(v) equals
        # sum_a d_a(tau_i^a) v^i + tau_i^a d_a v^i pointwise
        rng = np.random.default_rng(13)
        d, m = 2, 2
        tau = TractionStressDensity(
            tuple(tuple(fields.random_polynomial(rng, d, 3) for _ in range(d))
                  for _ in range(m)))
        v = VelocityField(tuple(fields.random_polynomial(rng, d, 3) for _ in range(m)))
        s = exterior_jet(tau, UNIT2)
        eta = jet_prolong_velocity(v, UNIT2)
        scheme = FDScheme()
        from jetstress.chart import partial_derivative
        for X in uniform_grid(UNIT2, 4, margin=0.05):
            ref = 0.0
            for i in range(m):
                for a in range(d):
                    ref += partial_derivative(tau.tau[i][a], a, X, UNIT2, scheme) * v.components[i](X)
                    ref += tau.tau[i][a](X) * partial_derivative(v.components[i], a, X, UNIT2, scheme)
            assert stress_pairing(s, eta, X) == pytest.approx(ref, abs=1e-6)


class TestDivergence:
    def test_constant_stress(self):
        s = const_stress([3.0], [[5.0]])
        div = divergence(s, UNIT1)
        assert div.value([0.5])[0] == pytest.approx(-3.0, abs=1e-11)

    def test_linear_mixed_block(self):
        # s_1 = 1, s_1^1 = X: div = 1 - 1 = 0
        s = VariationalStressDensity((fields.constant_field(1.0),),
                                     ((fields.coordinate_field(0),),))
        assert abs(divergence(s, UNIT1).value([0.5])[0]) <= 1e-10

    def test_exterior_jet_has_zero_divergence(self):
        # div(exterior_jet(tau)) = 0 identically, the null-stress property
        rng = np.random.default_rng(17)
        tau = TractionStressDensity(
            tuple(tuple(fields.random_polynomial(rng, 2, 3) for _ in range(2))
                  for _ in range(1)))
        div = divergence(exterior_jet(tau, UNIT2), UNIT2)
        worst = max(abs(div.value(X)[0]) for X in uniform_grid(UNIT2, 5))
        assert worst <= 1e-6


class TestCauchy:
    def test_upper_face(self):
        tau = TractionStressDensity(((fields.constant_field(2.0),
                                      fields.constant_field(7.0)),))
        t = cauchy_face_components(tau, BoundaryFace(1, "upper"), UNIT2)
        assert t[0]([0.5, 1.0]) == pytest.approx(7.0)

    def test_lower_face_sign(self):
        tau = TractionStressDensity(((fields.constant_field(2.0),
                                      fields.constant_field(7.0)),))
        t = cauchy_face_components(tau, BoundaryFace(1, "lower"), UNIT2)
        assert t[0]([0.5, 0.0]) == pytest.approx(-7.0)

    def test_zero_traction(self):
        tau = TractionStressDensity(((fields.constant_field(0.0),),))
        t = cauchy_face_components(tau, BoundaryFace(0, "upper"), UNIT1)
        assert t[0]([1.0]) == 0.0

    def test_periodic_axis_rejected(self):
        dom = ChartDomain.unit(2, periodic=[0])
        tau = TractionStressDensity(((fields.constant_field(1.0),
                                      fields.constant_field(1.0)),))
        with pytest.raises(ValueError):
            cauchy_face_components(tau, BoundaryFace(0, "upper"), dom)

    def test_single_face_density(self):
        tau = TractionStressDensity(((fields.constant_field(3.0),),))
        face = BoundaryFace(0, "upper")
        sf = cauchy_boundary(tau, face, UNIT1)
        assert sf.on_face(face, 1)[0]([1.0]) == pytest.approx(3.0)
        other = BoundaryFace(0, "lower")
        assert sf.on_face(other, 1)[0]([0.0]) == 0.0


def test_null_stress_zero_virtual_power():
    # an exterior jet of interior-supported tractions expends no power on any
    # velocity: static indeterminacy of the stress representation
    rule = QuadratureRule(8, panels=4)
    tau = TractionStressDensity(
        ((fields.poly_bump_field([(0.25, 0.75)], 1.3),),))
    s = exterior_jet(tau, UNIT1)
    rng = np.random.default_rng(2)
    for _ in range(3):
        v = VelocityField((fields.random_polynomial(rng, 1, 3),))
        assert abs(virtual_power_of_stress(s, v, UNIT1, rule)) <= 1e-8
