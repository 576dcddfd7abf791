import math

import numpy as np
import pytest
from hypothesis import given

from conftest import tensors
from micropolar.elasticity import CosseratMaterial
from micropolar.errors import CornerSingularityError, InvalidInputError, SingularGradientError
from micropolar.invariants import (
    dlode_dsigma,
    dq_dmu,
    dq_dsigma,
    invariant_set,
    lode_angle,
    mean_stress,
    q_cosserat,
    q_symmetric,
    q_transpose_form,
    sin3_lode,
)
from micropolar.tensors import IDENTITY, ddot, dev, sym, trace
from micropolar.verification import fd_gradient, relative_error

SIXTH_PI = math.pi / 6.0
ZERO = np.zeros((3, 3))


class TestMeanStress:
    @pytest.mark.parametrize("sig, p", [(-IDENTITY, -1.0), (np.diag([1.0, -1.0, 0.0]), 0.0), (np.diag([3.0, 2.0, 1.0]), 2.0)])
    def test_examples(self, sig, p):
        assert mean_stress(sig) == pytest.approx(p, abs=1e-15)


class TestEquivalentStress:
    def test_pressure(self, mat):
        assert q_cosserat(mat, 7.0 * IDENTITY, ZERO) == 0.0

    def test_uniaxial(self, mat):
        assert q_cosserat(mat, np.diag([300.0, 0.0, 0.0]), ZERO) == pytest.approx(300.0, rel=1e-15)

    def test_skew_shear(self):
        m = CosseratMaterial(K=1.0, G=2.0, Gc=2.0, T=1.0, B=1.0, Bc=1.0)
        tau = 4.0
        sig = np.zeros((3, 3))
        sig[0, 1], sig[1, 0] = tau, -tau
        assert q_cosserat(m, sig, ZERO) == pytest.approx(tau * math.sqrt(3.0), rel=1e-15)

    def test_couple_trace_term(self, mat):
        """q^2 = (3/2)(2G/Kc) tr(mu)^2 / 9 for a spherical couple stress."""
        c = 0.3
        expected = math.sqrt(1.5 * 2.0 * mat.G / mat.Kc * (3.0 * c) ** 2 / 9.0)
        assert q_cosserat(mat, ZERO, c * IDENTITY) == pytest.approx(expected, rel=1e-15)

    @given(tensors, tensors)
    def test_bounds(self, sig, mu):
        m = CosseratMaterial(K=2000.0, G=1000.0, Gc=500.0, T=10.0, B=20.0, Bc=30.0)
        q = q_cosserat(m, sig, mu)
        assert q >= q_symmetric(sig) * (1.0 - 1e-12) - 1e-12
        assert q_symmetric(sig) >= 0.0


class TestTransposeForm:
    def _plane(self, rng):
        sig = rng.normal(size=(3, 3))
        sig[0, 2] = sig[2, 0] = sig[1, 2] = sig[2, 1] = 0.0
        mu = np.zeros((3, 3))
        mu[0, 2], mu[2, 0], mu[1, 2], mu[2, 1] = rng.normal(size=4)
        return sig, mu

    def test_random(self, mat, rng):
        for _ in range(50):
            sig, mu = self._plane(rng)
            assert q_transpose_form(mat, sig, mu) == pytest.approx(q_cosserat(mat, sig, mu), rel=1e-12)

    def test_cosserat_ratio_two(self, rng):
        m = CosseratMaterial(K=10.0, G=3.0, Gc=6.0, T=1.0, B=2.0, Bc=4.0)
        sig, mu = self._plane(rng)
        assert q_transpose_form(m, sig, mu) == pytest.approx(q_cosserat(m, sig, mu), rel=1e-12)

    def test_classical(self, mat):
        s = np.array([[1.0, 2.0, 0.0], [2.0, -3.0, 0.0], [0.0, 0.0, 0.5]])
        d = dev(s)
        assert q_transpose_form(mat, s, ZERO) == pytest.approx(math.sqrt(1.5 * ddot(d, d)), rel=1e-14)

    def test_rejects_out_of_plane(self, mat):
        sig = np.zeros((3, 3))
        sig[0, 2] = 1.0
        with pytest.raises(InvalidInputError):
            q_transpose_form(mat, sig, ZERO)


class TestLodeAngle:
    """Tension positive: triaxial compression ``diag(-2, 1, 1)`` sits at ``-pi/6``."""

    @pytest.mark.parametrize(
        "s, theta",
        [
            (np.diag([-2.0, 1.0, 1.0]), -SIXTH_PI),
            (np.diag([2.0, -1.0, -1.0]), SIXTH_PI),
            (np.diag([1.0, 0.0, -1.0]), 0.0),
        ],
    )
    def test_examples(self, s, theta):
        assert lode_angle(3.7 * s + 5.0 * IDENTITY) == pytest.approx(theta, abs=1e-12)

    def test_hydrostatic_convention(self):
        assert lode_angle(-4.0 * IDENTITY) == 0.0
        assert sin3_lode(-4.0 * IDENTITY) is None

    def test_skew_part_ignored(self, rng):
        s = rng.normal(size=(3, 3))
        assert lode_angle(s) == lode_angle(sym(s))

    @given(tensors)
    def test_range(self, s):
        assert -SIXTH_PI <= lode_angle(s) <= SIXTH_PI

    def test_invariant_set(self, mat):
        inv = invariant_set(mat, np.diag([-3.0, 0.0, 0.0]), ZERO)
        assert inv.p == pytest.approx(-1.0)
        assert inv.q == pytest.approx(3.0)
        assert inv.q_s == pytest.approx(3.0)
        assert inv.theta_s == pytest.approx(-SIXTH_PI)


class TestGradients:
    def test_uniaxial(self, mat):
        np.testing.assert_allclose(dq_dsigma(mat, np.diag([5.0, 0.0, 0.0]), ZERO), np.diag([1.0, -0.5, -0.5]), atol=1e-15)

    def test_spherical_couple_only(self, mat):
        sig = np.diag([2.0, -1.0, -1.0])
        m = 0.2
        q = q_cosserat(mat, sig, m * IDENTITY)
        expected = mat.G * 3.0 * m / (3.0 * mat.Kc * q) * IDENTITY
        np.testing.assert_allclose(dq_dmu(mat, sig, m * IDENTITY), expected, rtol=1e-14)
        fd = fd_gradient(lambda x: q_cosserat(mat, sig, x), m * IDENTITY)
        assert relative_error(expected, fd) < 1e-8

    def test_random_fd(self, mat, rng):
        for _ in range(30):
            sig, mu = rng.normal(size=(3, 3)) * 10, rng.normal(size=(3, 3))
            assert relative_error(dq_dsigma(mat, sig, mu), fd_gradient(lambda s: q_cosserat(mat, s, mu), sig)) < 1e-7
            assert relative_error(dq_dmu(mat, sig, mu), fd_gradient(lambda m: q_cosserat(mat, sig, m), mu)) < 1e-7
            assert abs(trace(dq_dsigma(mat, sig, mu))) < 1e-14

    def test_singular(self, mat):
        with pytest.raises(SingularGradientError):
            dq_dsigma(mat, IDENTITY, ZERO)
        with pytest.raises(SingularGradientError):
            dq_dmu(mat, ZERO, ZERO)


class TestLodeGradient:
    def test_pure_shear(self):
        s = np.diag([1.0, 0.0, -1.0]) * 3.0
        d = dlode_dsigma(s)
        assert abs(ddot(d, s)) < 1e-15
        assert abs(trace(d)) < 1e-15
        assert relative_error(d, fd_gradient(lode_angle, s)) < 1e-8

    def test_random(self, rng):
        for _ in range(30):
            s = rng.normal(size=(3, 3)) * 10
            if abs(sin3_lode(s)) > 0.99:
                continue
            d = dlode_dsigma(s)
            assert relative_error(d, fd_gradient(lode_angle, s), floor=1e-12) < 1e-6
            assert abs(ddot(d, sym(s))) < 1e-12
            np.testing.assert_allclose(d, d.T, atol=1e-15)

    def test_hydrostatic_zero(self):
        np.testing.assert_array_equal(dlode_dsigma(2.0 * IDENTITY), ZERO)

    def test_corner(self):
        with pytest.raises(CornerSingularityError):
            dlode_dsigma(np.diag([-2.0, 1.0, 1.0]))
