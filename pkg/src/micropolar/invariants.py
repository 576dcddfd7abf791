"""Stress invariants of the Cosserat continuum and their analytic gradients.

``q`` is the equivalent von Mises stress obtained from the elastic
distortion energy, ``q**2 = 6 G Psi_D``; ``q_s`` and the Lode angle use the
symmetric deviatoric stress only. Tension is positive and the Lode angle is
``-pi/6`` in triaxial compression, ``+pi/6`` in triaxial extension.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CornerSingularityError, InvalidInputError, SingularGradientError
from .tensors import IDENTITY, as_tensor, cofactor, ddot, ddot_transpose, det, dev, norm, skw, sym, trace

FLOOR_REL = 1e-10
CORNER_TOL = 1e-9
PLANE_TOL = 1e-12


@dataclass(frozen=True)
class InvariantSet:
    p: float
    q: float
    q_s: float
    theta_s: float


def stress_floor(sigma):
    """Threshold below which ``q`` or ``q_s`` is treated as zero."""
    return FLOOR_REL * max(1.0, norm(sigma))


def mean_stress(sigma):
    return trace(as_tensor(sigma)) / 3.0


def _q_squared(mat, sigma, mu):
    s_sym = dev(sym(sigma))
    s_skw = skw(sigma)
    m_sym = dev(sym(mu))
    m_skw = skw(mu)
    tr_mu = trace(mu)
    G = mat.G
    return 1.5 * (
        ddot(s_sym, s_sym)
        + (G / mat.Gc) * ddot(s_skw, s_skw)
        + (G / mat.B) * ddot(m_sym, m_sym)
        + (G / mat.Bc) * ddot(m_skw, m_skw)
        + (2.0 * G / mat.Kc) * tr_mu * tr_mu / 9.0
    )


def q_cosserat(mat, sigma, mu):
    """Equivalent von Mises stress of a Cosserat stress state.

    Reduces to ``sqrt(3/2 s:s)`` for a symmetric stress with no couple
    stress. Skew stress and couple stress are weighted by the modulus ratios
    ``G/Gc``, ``G/B``, ``G/Bc`` and ``2G/Kc``.
    """
    sigma = as_tensor(sigma)
    mu = as_tensor(mu)
    return math.sqrt(max(_q_squared(mat, sigma, mu), 0.0))


def q_symmetric(sigma):
    """``q_s = sqrt(3/2 s_sym : s_sym)``."""
    s = dev(sym(as_tensor(sigma)))
    return math.sqrt(1.5 * ddot(s, s))


def is_plane_strain(sigma, mu, tol=PLANE_TOL):
    """Plane state in the 1-2 plane: no out-of-plane shear stress, couple stress only on 13/23/31/32."""
    scale_s = max(1.0, norm(sigma))
    scale_m = max(1.0, norm(mu))
    s_out = max(abs(sigma[0, 2]), abs(sigma[2, 0]), abs(sigma[1, 2]), abs(sigma[2, 1]))
    m_in = max(abs(mu[0, 0]), abs(mu[1, 1]), abs(mu[2, 2]), abs(mu[0, 1]), abs(mu[1, 0]))
    return s_out <= tol * scale_s and m_in <= tol * scale_m


def q_transpose_form(mat, sigma, mu):
    """Equivalent stress written with ``a:a`` and ``a:a^T`` products (plane strain only).

    Uses ``a1 = (a3 - a4)/2`` on ``s:s`` and ``a2 = (a3 + a4)/2`` on
    ``s:s^T``, where ``a3`` and ``a4`` weight ``tr(sym^2)`` and ``tr(skw^2)``.

    Raises
    ------
    InvalidInputError
        If the state is not a plane-strain state.
    """
    sigma = as_tensor(sigma)
    mu = as_tensor(mu)
    if not is_plane_strain(sigma, mu):
        raise InvalidInputError("q_transpose_form requires a plane-strain stress state")
    G, Gc, B, Bc = mat.G, mat.Gc, mat.B, mat.Bc
    s = dev(sigma)
    m = dev(mu)
    val = (
        (Gc + G) / (2.0 * Gc) * ddot(s, s)
        + (Gc - G) / (2.0 * Gc) * ddot_transpose(s, s)
        + (G / B) * (Bc + B) / (2.0 * Bc) * ddot(m, m)
        + (G / B) * (Bc - B) / (2.0 * Bc) * ddot_transpose(m, m)
    )
    return math.sqrt(max(1.5 * val, 0.0))


def sin3_lode(sigma):
    """``sin(3 theta_s)`` of the symmetric deviator, or ``None`` on the hydrostatic axis."""
    sigma = as_tensor(sigma)
    s = dev(sym(sigma))
    qs = math.sqrt(1.5 * ddot(s, s))
    if qs <= stress_floor(sigma):
        return None
    x = 13.5 * det(s) / qs**3
    return min(1.0, max(-1.0, x))


def lode_angle(sigma):
    """Lode angle of the symmetric deviatoric stress, in ``[-pi/6, pi/6]``.

    ``theta_s = 1/3 arcsin(27/2 det(s_sym) / q_s^3)``; returns 0 on the
    hydrostatic axis.
    """
    x = sin3_lode(sigma)
    if x is None:
        return 0.0
    return math.asin(x) / 3.0


def invariant_set(mat, sigma, mu):
    sigma = as_tensor(sigma)
    mu = as_tensor(mu)
    return InvariantSet(
        p=mean_stress(sigma),
        q=q_cosserat(mat, sigma, mu),
        q_s=q_symmetric(sigma),
        theta_s=lode_angle(sigma),
    )


def _checked_q(mat, sigma, mu):
    q = q_cosserat(mat, sigma, mu)
    if q <= stress_floor(sigma):
        raise SingularGradientError("q vanishes; gradient undefined")
    return q


def dq_dsigma(mat, sigma, mu):
    sigma = as_tensor(sigma)
    mu = as_tensor(mu)
    q = _checked_q(mat, sigma, mu)
    return (1.5 / q) * (dev(sym(sigma)) + (mat.G / mat.Gc) * skw(sigma))


def dq_dmu(mat, sigma, mu):
    sigma = as_tensor(sigma)
    mu = as_tensor(mu)
    q = _checked_q(mat, sigma, mu)
    G = mat.G
    return (1.5 / q) * ((G / mat.B) * dev(sym(mu)) + (G / mat.Bc) * skw(mu)) + (
        G * trace(mu) / (3.0 * mat.Kc * q)
    ) * IDENTITY


def dlode_dsigma(sigma, corner_tol=CORNER_TOL):
    """Gradient of the Lode angle with respect to the (full) stress tensor.

    Zero on the hydrostatic axis. Lives in the symmetric deviatoric
    subspace, so it is traceless and symmetric.

    Raises
    ------
    CornerSingularityError
        Within `corner_tol` of ``|sin 3 theta| = 1``.
    """
    sigma = as_tensor(sigma)
    s = dev(sym(sigma))
    qs = math.sqrt(1.5 * ddot(s, s))
    if qs <= stress_floor(sigma):
        return np.zeros((3, 3))
    x = 13.5 * det(s) / qs**3
    if abs(x) > 1.0 - corner_tol:
        raise CornerSingularityError("Lode angle gradient requested at a corner")
    dx = 13.5 * (dev(cofactor(s)) / qs**3 - 4.5 * det(s) * s / qs**5)
    return dx / (3.0 * math.sqrt(1.0 - x * x))
