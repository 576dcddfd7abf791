"""Generalized Classical yield function and plastic potential.

    f = q Gamma(theta_s) + M_c p - sigma_0(lambda)
    g = q Gamma_hat(theta_s) + M_c_hat p

``Gamma(theta) = alpha cos[arccos(beta sin 3theta)/3 - gamma pi/6]`` is the
reciprocal of the deviatoric section radius, normalised to 1 in triaxial
compression (``theta = -pi/6``).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CornerSingularityError, InvalidInputError, ParameterDomainError
from .invariants import CORNER_TOL, dlode_dsigma, dq_dmu, dq_dsigma, lode_angle, mean_stress, q_cosserat, sin3_lode
from .tensors import IDENTITY, as_tensor

SIXTH_PI = math.pi / 6.0
THETA_SLACK = 1e-12

PRESETS = ("von-mises", "drucker-prager", "tresca", "mohr-coulomb", "matsuoka-nakai", "lade-duncan")
FRICTIONAL = ("drucker-prager", "mohr-coulomb", "matsuoka-nakai", "lade-duncan")


@dataclass(frozen=True)
class GCShape:
    """Deviatoric shape ``(alpha, beta, gamma)`` and meridional slope ``M``."""

    alpha: float
    beta: float
    gamma: float
    M: float = 0.0
    name: str = "custom"

    def __post_init__(self):
        for f in ("alpha", "beta", "gamma", "M"):
            v = float(getattr(self, f))
            if not math.isfinite(v):
                raise ParameterDomainError(f"{f} must be finite")
            object.__setattr__(self, f, v)
        if self.alpha <= 0.0:
            raise ParameterDomainError("alpha must be positive")
        if not 0.0 <= self.beta <= 1.0:
            raise ParameterDomainError(f"beta must lie in [0, 1], got {self.beta}")
        if self.M < 0.0:
            raise ParameterDomainError("M must be non-negative")

    @property
    def params(self):
        """``(alpha, beta, gamma, M)`` as consumed by the kernels."""
        return (self.alpha, self.beta, self.gamma, self.M)


@dataclass(frozen=True)
class HardeningLaw:
    """Exponential cohesion law ``c(lam) = c_f + (c_i - c_f) exp(-a lam)``."""

    c_i: float
    c_f: float
    a: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if self.c_i < 0.0 or self.c_f < 0.0 or self.a < 0.0:
            raise ParameterDomainError("c_i, c_f and a must be non-negative")
        if not 0.0 <= self.phi < math.pi / 2.0:
            raise ParameterDomainError("phi must lie in [0, pi/2)")

    @classmethod
    def perfect(cls, c, phi=0.0):
        return cls(c_i=c, c_f=c, a=0.0, phi=phi)

    @property
    def strength_factor(self):
        """``6 cos(phi) / (3 - sin(phi))``: converts cohesion to the q-axis intercept."""
        return 6.0 * math.cos(self.phi) / (3.0 - math.sin(self.phi))


@dataclass(frozen=True)
class GCCriterion:
    yield_shape: GCShape
    potential: GCShape
    hardening: HardeningLaw

    @classmethod
    def associated(cls, shape, hardening):
        return cls(yield_shape=shape, potential=shape, hardening=hardening)

    @property
    def is_associated(self):
        return self.yield_shape.params == self.potential.params


def mc_gamma_bar(phi):
    return (6.0 / math.pi) * math.atan(math.sin(phi) / math.sqrt(3.0))


def meridional_slope(phi):
    """Triaxial-compression slope ``M_c = 6 sin(phi) / (3 - sin(phi))``."""
    s = math.sin(phi)
    return 6.0 * s / (3.0 - s)


def _round(alpha, beta, gamma, eps_round):
    # rounded corners: pull beta below 1, rescale alpha to keep Gamma(-pi/6) = 1
    if eps_round <= 0.0 or beta < 1.0:
        return alpha, beta
    beta = 1.0 - eps_round
    alpha = 1.0 / math.cos(math.acos(-beta) / 3.0 - gamma * SIXTH_PI)
    return alpha, beta


def preset(name, phi=None, eps_round=0.0):
    """Shape parameters of a classical criterion.

    Parameters
    ----------
    name : str
        One of ``von-mises``, ``drucker-prager``, ``tresca``,
        ``mohr-coulomb``, ``matsuoka-nakai``, ``lade-duncan``.
    phi : float, optional
        Angle of shearing resistance in radians; required by the frictional
        criteria and ignored by the pressure-insensitive ones (``M = 0``).
    eps_round : float
        Corner rounding for ``beta = 1`` shapes (Tresca, Mohr-Coulomb).
        ``0`` keeps the exact sharp-cornered surface.
    """
    key = name.lower().replace("_", "-").replace(" ", "-")
    if key not in PRESETS:
        raise ParameterDomainError(f"unknown criterion {name!r}; expected one of {PRESETS}")
    if not 0.0 <= eps_round < 1.0:
        raise ParameterDomainError("eps_round must lie in [0, 1)")
    if key in FRICTIONAL:
        if phi is None:
            raise ParameterDomainError(f"{key} needs the angle of shearing resistance phi")
        lo_ok = phi > 0.0 if key in ("matsuoka-nakai", "lade-duncan") else phi >= 0.0
        if not (lo_ok and phi < math.pi / 2.0):
            raise ParameterDomainError(f"phi = {phi} out of range for {key}")
        M = meridional_slope(phi)
    else:
        M = 0.0

    if key in ("von-mises", "drucker-prager"):
        return GCShape(1.0, 0.0, 1.0, M, key)
    if key == "tresca":
        alpha, beta = _round(1.0 / math.cos(SIXTH_PI), 1.0, 1.0, eps_round)
        return GCShape(alpha, beta, 1.0, M, key)
    if key == "mohr-coulomb":
        gbar = mc_gamma_bar(phi)
        gamma = 1.0 - gbar
        alpha, beta = _round(1.0 / math.cos((gbar + 1.0) * SIXTH_PI), 1.0, gamma, eps_round)
        return GCShape(alpha, beta, gamma, M, key)

    s2 = math.sin(phi) ** 2
    if key == "matsuoka-nakai":
        k = (9.0 - s2) / (1.0 - s2)
        a1 = (k - 3.0) / (k - 9.0)
        a2 = k / (k - 9.0)
    else:
        s = math.sin(phi)
        k = (3.0 - s) ** 3 / ((1.0 + s) * (1.0 - s) ** 2)
        a1 = k / (k - 27.0)
        a2 = a1
    beta = a2 / a1**1.5
    if beta > 1.0:
        raise ParameterDomainError(f"{key}: beta = {beta} > 1 for phi = {phi}")
    return GCShape(2.0 / 3.0 * math.sqrt(a1) * M, beta, 0.0, M, key)


def matsuoka_nakai_constant(phi):
    s2 = math.sin(phi) ** 2
    return (9.0 - s2) / (1.0 - s2)


def lade_duncan_constant(phi):
    s = math.sin(phi)
    return (3.0 - s) ** 3 / ((1.0 + s) * (1.0 - s) ** 2)


def _check_theta(theta):
    if not -SIXTH_PI - THETA_SLACK <= theta <= SIXTH_PI + THETA_SLACK:
        raise InvalidInputError(f"Lode angle {theta} outside [-pi/6, pi/6]")
    return min(SIXTH_PI, max(-SIXTH_PI, theta))


def _psi(shape, theta):
    x = min(1.0, max(-1.0, shape.beta * math.sin(3.0 * theta)))
    return math.acos(x) / 3.0 - shape.gamma * SIXTH_PI


def gamma_value(shape, theta):
    theta = _check_theta(theta)
    return shape.alpha * math.cos(_psi(shape, theta))


def gamma_derivative(shape, theta):
    """dGamma/dtheta.

    Raises
    ------
    CornerSingularityError
        For ``beta = 1`` exactly at ``|theta| = pi/6``.
    """
    theta = _check_theta(theta)
    if shape.beta == 0.0:
        return 0.0
    c3 = math.cos(3.0 * theta)
    if shape.beta == 1.0:
        if abs(theta) >= SIXTH_PI:
            raise CornerSingularityError("dGamma/dtheta undefined at a sharp corner")
        ratio = 1.0  # cos3t / |cos3t| inside the sector
    else:
        ratio = c3 / math.sqrt(1.0 - (shape.beta * math.sin(3.0 * theta)) ** 2)
    return shape.alpha * math.sin(_psi(shape, theta)) * shape.beta * ratio


def cohesion(h, lam):
    if lam < 0.0:
        raise InvalidInputError("plastic multiplier must be non-negative")
    return h.c_f + (h.c_i - h.c_f) * math.exp(-h.a * lam)


def sigma0(h, lam):
    return cohesion(h, lam) * h.strength_factor


def hardening_modulus(h, lam):
    """d sigma_0 / d lambda (negative when softening)."""
    if lam < 0.0:
        raise InvalidInputError("plastic multiplier must be non-negative")
    return -h.a * (h.c_i - h.c_f) * math.exp(-h.a * lam) * h.strength_factor


def surface_value(shape, mat, sigma, mu):
    """``q Gamma(theta) + M p`` (the yield function without the cohesion term)."""
    sigma = as_tensor(sigma)
    mu = as_tensor(mu)
    return q_cosserat(mat, sigma, mu) * gamma_value(shape, lode_angle(sigma)) + shape.M * mean_stress(sigma)


def yield_value(cr, mat, sigma, mu, lam):
    return surface_value(cr.yield_shape, mat, sigma, mu) - sigma0(cr.hardening, lam)


def potential_value(cr, mat, sigma, mu):
    return surface_value(cr.potential, mat, sigma, mu)


def surface_gradients(shape, mat, sigma, mu, corner_tol=CORNER_TOL):
    """Gradients of ``q Gamma + M p`` with respect to stress and couple stress.

    Within `corner_tol` of a deviatoric corner the Lode-angle term is
    dropped and the flow falls back to the radial direction.

    Raises
    ------
    SingularGradientError
        When ``q`` vanishes.
    """
    sigma = as_tensor(sigma)
    mu = as_tensor(mu)
    dqs = dq_dsigma(mat, sigma, mu)
    dqm = dq_dmu(mat, sigma, mu)
    theta = lode_angle(sigma)
    gam = gamma_value(shape, theta)
    d_sigma = (shape.M / 3.0) * IDENTITY + gam * dqs
    x = sin3_lode(sigma)
    if shape.beta > 0.0 and x is not None and abs(x) <= 1.0 - corner_tol:
        q = q_cosserat(mat, sigma, mu)
        d_sigma = d_sigma + q * gamma_derivative(shape, theta) * dlode_dsigma(sigma, corner_tol)
    return d_sigma, gam * dqm


def potential_gradients(cr, mat, sigma, mu):
    """Plastic flow directions ``(dg/dsigma, dg/dmu)``."""
    return surface_gradients(cr.potential, mat, sigma, mu)


def yield_gradients(cr, mat, sigma, mu, lam):
    """``(df/dsigma, df/dmu, df/dlambda)``."""
    d_sigma, d_mu = surface_gradients(cr.yield_shape, mat, sigma, mu)
    return d_sigma, d_mu, -hardening_modulus(cr.hardening, lam)


def deviatoric_radius(shape, theta):
    """Section radius in units of the triaxial-compression radius, ``1/Gamma``."""
    return 1.0 / gamma_value(shape, theta)


def principal_values_from_invariants(p, q_s, theta):
    """Principal stresses (descending) with given ``p``, ``q_s`` and Lode angle.

    Inverse of the Lode-angle definition used here: ``theta = -pi/6`` gives
    ``s = q_s/3 * (1, 1, -2)``.
    """
    r = 2.0 * q_s / 3.0
    s = np.array(
        [
            r * math.sin(2.0 * math.pi / 3.0 - theta),
            r * math.sin(-theta),
            r * math.sin(-theta - 2.0 * math.pi / 3.0),
        ]
    )
    return np.sort(s)[::-1] + p
