import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from micropolar.criterion import (
    FRICTIONAL,
    PRESETS,
    GCCriterion,
    GCShape,
    HardeningLaw,
    cohesion,
    deviatoric_radius,
    gamma_derivative,
    gamma_value,
    hardening_modulus,
    lade_duncan_constant,
    matsuoka_nakai_constant,
    potential_gradients,
    preset,
    principal_values_from_invariants,
    sigma0,
    yield_gradients,
    yield_value,
)
from micropolar.errors import CornerSingularityError, InvalidInputError, ParameterDomainError
from micropolar.invariants import lode_angle, q_symmetric
from micropolar.tensors import IDENTITY, trace
from micropolar.verification import (
    fd_derivative,
    fd_gradient,
    mohr_coulomb_exact,
    relative_error,
    stress_invariants,
    tresca_exact,
)

SIXTH_PI = math.pi / 6.0
ZERO = np.zeros((3, 3))
PHI30 = math.radians(30.0)
thetas = st.floats(min_value=-SIXTH_PI, max_value=SIXTH_PI)


def shape_of(name, phi_deg=30.0, eps=0.0):
    return preset(name, math.radians(phi_deg) if name in FRICTIONAL else None, eps_round=eps)


class TestPresets:
    def test_von_mises_table_row(self):
        sh = preset("von-mises")
        assert (sh.alpha, sh.beta, sh.gamma, sh.M) == (1.0, 0.0, 1.0, 0.0)

    @pytest.mark.parametrize("name", PRESETS)
    @pytest.mark.parametrize("phi_deg", [10.0, 20.0, 30.0, 40.0])
    @pytest.mark.parametrize("eps", [0.0, 1e-6, 1e-2])
    def test_unity_in_compression(self, name, phi_deg, eps):
        assert gamma_value(shape_of(name, phi_deg, eps), -SIXTH_PI) == pytest.approx(1.0, abs=1e-9)

    @given(thetas)
    def test_circular(self, t):
        assert gamma_value(preset("von-mises"), t) == 1.0
        assert gamma_value(preset("drucker-prager", 0.3), t) == pytest.approx(1.0, abs=1e-15)

    def test_tresca_equal_strengths(self):
        assert gamma_value(preset("tresca"), SIXTH_PI) == pytest.approx(1.0, abs=1e-12)

    def test_mohr_coulomb_ratio(self):
        sh = preset("mohr-coulomb", PHI30)
        assert gamma_value(sh, SIXTH_PI) == pytest.approx(1.4, abs=1e-9)
        assert deviatoric_radius(sh, -SIXTH_PI) / deviatoric_radius(sh, SIXTH_PI) == pytest.approx(1.4, abs=1e-9)

    @pytest.mark.parametrize("phi_deg", [10.0, 25.0, 40.0])
    def test_mohr_coulomb_ratio_general(self, phi_deg):
        s = math.sin(math.radians(phi_deg))
        sh = preset("mohr-coulomb", math.radians(phi_deg))
        assert gamma_value(sh, SIXTH_PI) == pytest.approx((3 + s) / (3 - s), rel=1e-12)

    def test_matsuoka_nakai_constant(self):
        assert matsuoka_nakai_constant(PHI30) == pytest.approx(35.0 / 3.0)

    @pytest.mark.parametrize(
        "name, kwargs",
        [("cam-clay", {}), ("mohr-coulomb", {}), ("drucker-prager", {"phi": 2.0}), ("matsuoka-nakai", {"phi": 0.0})],
    )
    def test_bad_requests(self, name, kwargs):
        with pytest.raises(ParameterDomainError):
            preset(name, **kwargs)

    def test_shape_validation(self):
        with pytest.raises(ParameterDomainError):
            GCShape(alpha=1.0, beta=1.5, gamma=0.0)
        with pytest.raises(ParameterDomainError):
            GCShape(alpha=-1.0, beta=0.5, gamma=0.0)
        with pytest.raises(ParameterDomainError):
            preset("tresca", eps_round=1.0)


class TestExactCriteria:
    """The GC zero set reproduces the exact classical surfaces."""

    def _states(self, rng, n, scale):
        for _ in range(n):
            a = rng.normal(size=(3, 3))
            yield 0.5 * (a + a.T) * scale + rng.normal() * scale * IDENTITY

    @pytest.mark.parametrize("phi_deg", [10.0, 30.0, 40.0])
    def test_mohr_coulomb_signs(self, mat, rng, phi_deg):
        phi = math.radians(phi_deg)
        cr = GCCriterion.associated(preset("mohr-coulomb", phi), HardeningLaw.perfect(10.0, phi))
        for sig in self._states(rng, 300, 30.0):
            e = mohr_coulomb_exact(sig, 10.0, phi)
            if abs(e) > 1e-8 * np.abs(sig).max():
                assert (yield_value(cr, mat, sig, ZERO, 0.0) > 0) == (e > 0)

    def test_mohr_coulomb_proportional(self, mat, rng):
        """f and the exact MC expression are proportional: f = E * 3 / (3 - sin phi)."""
        cr = GCCriterion.associated(preset("mohr-coulomb", PHI30), HardeningLaw.perfect(10.0, PHI30))
        for sig in self._states(rng, 50, 30.0):
            assert yield_value(cr, mat, sig, ZERO, 0.0) == pytest.approx(
                mohr_coulomb_exact(sig, 10.0, PHI30) * 3.0 / (3.0 - 0.5), rel=1e-10, abs=1e-10
            )

    def test_tresca_signs(self, mat, rng):
        cr = GCCriterion.associated(preset("tresca"), HardeningLaw.perfect(10.0))
        for sig in self._states(rng, 300, 30.0):
            e = tresca_exact(sig, 10.0)
            if abs(e) > 1e-8 * np.abs(sig).max():
                assert (yield_value(cr, mat, sig, ZERO, 0.0) > 0) == (e > 0)

    @pytest.mark.parametrize("phi_deg", [15.0, 30.0, 40.0])
    def test_matsuoka_nakai_and_lade_duncan_loci(self, rng, phi_deg):
        phi = math.radians(phi_deg)
        for name, const, ratio in (
            ("matsuoka-nakai", matsuoka_nakai_constant, lambda a, b, c: a * b / c),
            ("lade-duncan", lade_duncan_constant, lambda a, b, c: a**3 / c),
        ):
            sh = preset(name, phi)
            for theta in np.linspace(-SIXTH_PI, SIXTH_PI, 25):
                p = -10.0
                s = principal_values_from_invariants(p, -sh.M * p / gamma_value(sh, theta), theta)
                i1, i2, i3 = stress_invariants(np.diag(s))
                assert ratio(i1, i2, i3) == pytest.approx(const(phi), rel=1e-9)

    def test_principal_values_round_trip(self):
        for theta in np.linspace(-SIXTH_PI, SIXTH_PI, 7):
            s = np.diag(principal_values_from_invariants(-2.0, 3.0, theta))
            assert q_symmetric(s) == pytest.approx(3.0)
            # asin is ill conditioned at the sector ends: error ~ sqrt(eps)
            assert lode_angle(s) == pytest.approx(theta, abs=1e-9 if abs(theta) < 0.5 else 1e-7)
            assert trace(s) / 3.0 == pytest.approx(-2.0)


class TestGammaDerivative:
    def test_constant_shapes(self):
        assert gamma_derivative(preset("von-mises"), 0.3) == 0.0

    @pytest.mark.parametrize("name", PRESETS)
    def test_fd(self, name):
        sh = shape_of(name, eps=1e-6)
        for t in np.linspace(-0.95, 0.95, 11) * SIXTH_PI:
            assert gamma_derivative(sh, t) == pytest.approx(fd_derivative(lambda x: gamma_value(sh, x), t), rel=1e-7, abs=1e-9)

    def test_mohr_coulomb_at_zero(self):
        sh = preset("mohr-coulomb", PHI30)
        assert gamma_derivative(sh, 0.0) == pytest.approx(fd_derivative(lambda x: gamma_value(sh, x), 0.0), rel=1e-7)

    def test_sharp_corner(self):
        with pytest.raises(CornerSingularityError):
            gamma_derivative(preset("tresca"), SIXTH_PI)

    def test_out_of_range(self):
        with pytest.raises(InvalidInputError):
            gamma_value(preset("tresca"), 0.6)


class TestHardening:
    def test_examples(self):
        h = HardeningLaw(100.0, 20.0, 10.0)
        assert cohesion(h, 0.0) == 100.0
        assert cohesion(h, math.log(2.0) / 10.0) == pytest.approx(60.0, rel=1e-14)
        assert cohesion(HardeningLaw.perfect(7.0), 5.0) == 7.0
        assert sigma0(h, 0.0) == pytest.approx(200.0)

    def test_strength_factor(self):
        h = HardeningLaw.perfect(1.0, PHI30)
        assert sigma0(h, 0.0) == pytest.approx(6.0 * math.cos(PHI30) / 2.5)

    def test_modulus_fd(self):
        h = HardeningLaw(10.0, 3.0, 4.0, 0.4)
        for lam in (0.1, 1.0):
            assert hardening_modulus(h, lam) == pytest.approx(fd_derivative(lambda x: sigma0(h, x), lam), rel=1e-8)
        forward = (sigma0(h, 1e-7) - sigma0(h, 0.0)) / 1e-7
        assert hardening_modulus(h, 0.0) == pytest.approx(forward, rel=1e-6)

    def test_monotone(self):
        h = HardeningLaw(100.0, 20.0, 10.0)
        vals = [cohesion(h, x) for x in np.linspace(0, 2, 50)]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert vals[-1] == pytest.approx(20.0, rel=1e-6)

    def test_negative_lambda(self):
        with pytest.raises(InvalidInputError):
            cohesion(HardeningLaw.perfect(1.0), -1.0)
        with pytest.raises(InvalidInputError):
            hardening_modulus(HardeningLaw.perfect(1.0), -1.0)


class TestYieldFunction:
    def test_origin(self, mat):
        cr = GCCriterion.associated(preset("mohr-coulomb", PHI30), HardeningLaw.perfect(3.0, PHI30))
        assert yield_value(cr, mat, ZERO, ZERO, 0.0) == pytest.approx(-sigma0(cr.hardening, 0.0))

    def test_uniaxial_von_mises(self, mat):
        cr = GCCriterion.associated(preset("von-mises"), HardeningLaw.perfect(5.0))
        assert yield_value(cr, mat, np.diag([10.0, 0.0, 0.0]), ZERO, 0.0) == pytest.approx(0.0, abs=1e-14)

    def test_drucker_prager_apex(self, mat):
        sh = GCShape(1.0, 0.0, 1.0, M=1.2)
        cr = GCCriterion.associated(sh, HardeningLaw.perfect(2.0))
        s0 = sigma0(cr.hardening, 0.0)
        assert yield_value(cr, mat, s0 / 1.2 * IDENTITY, ZERO, 0.0) == pytest.approx(0.0, abs=1e-14)


class TestFlowGradients:
    def test_von_mises_uniaxial(self, mat):
        cr = GCCriterion.associated(preset("von-mises"), HardeningLaw.perfect(1.0))
        gs, gm = potential_gradients(cr, mat, np.diag([3.0, 0.0, 0.0]), ZERO)
        np.testing.assert_allclose(gs, np.diag([1.0, -0.5, -0.5]), atol=1e-15)
        np.testing.assert_array_equal(gm, ZERO)

    @pytest.mark.parametrize("name", PRESETS)
    def test_trace_is_slope(self, mat, rng, name):
        cr = GCCriterion(shape_of("von-mises"), shape_of(name, 20.0, 1e-6), HardeningLaw.perfect(1.0))
        sig, mu = rng.normal(size=(3, 3)) * 5, rng.normal(size=(3, 3)) * 0.1
        gs, _ = potential_gradients(cr, mat, sig, mu)
        assert trace(gs) == pytest.approx(cr.potential.M, abs=1e-13)

    @pytest.mark.parametrize("name", ["mohr-coulomb", "tresca", "matsuoka-nakai", "lade-duncan"])
    def test_fd(self, mat, rng, name):
        sh = shape_of(name, 30.0, 1e-6)
        cr = GCCriterion.associated(sh, HardeningLaw(5.0, 2.0, 1.0, PHI30 if name in FRICTIONAL else 0.0))
        checked = 0
        while checked < 20:
            sig, mu = rng.normal(size=(3, 3)) * 10, rng.normal(size=(3, 3)) * 0.3
            if abs(abs(lode_angle(sig)) - SIXTH_PI) < 0.05:
                continue
            fs, fm, fl = yield_gradients(cr, mat, sig, mu, 0.2)
            assert relative_error(fs, fd_gradient(lambda s: yield_value(cr, mat, s, mu, 0.2), sig)) < 1e-6
            assert relative_error(fm, fd_gradient(lambda m: yield_value(cr, mat, sig, m, 0.2), mu)) < 1e-6
            assert fl == pytest.approx(-hardening_modulus(cr.hardening, 0.2))
            checked += 1

    def test_corner_fallback_is_radial(self, mat):
        """At a sharp corner the Lode term is dropped."""
        cr = GCCriterion.associated(preset("tresca"), HardeningLaw.perfect(1.0))
        sig = np.diag([-2.0, 1.0, 1.0])
        gs, _ = potential_gradients(cr, mat, sig, ZERO)
        np.testing.assert_allclose(gs, 1.5 * np.diag([-2.0, 1.0, 1.0]) / 3.0, atol=1e-14)

    def test_homogeneity(self, mat, rng):
        cr = GCCriterion.associated(shape_of("lade-duncan"), HardeningLaw.perfect(2.0, PHI30))
        cr2 = GCCriterion.associated(shape_of("lade-duncan"), HardeningLaw.perfect(6.0, PHI30))
        sig, mu = rng.normal(size=(3, 3)), rng.normal(size=(3, 3)) * 0.1
        assert yield_value(cr2, mat, 3 * sig, 3 * mu, 0.0) == pytest.approx(3 * yield_value(cr, mat, sig, mu, 0.0), rel=1e-13)

    def test_non_associated_flag(self):
        h = HardeningLaw.perfect(1.0, PHI30)
        assert GCCriterion.associated(shape_of("mohr-coulomb"), h).is_associated
        assert not GCCriterion(shape_of("mohr-coulomb"), shape_of("mohr-coulomb", 10.0), h).is_associated
