"""Pure-Python kernels, composed from the numpy reference functions.

Same call signatures as the compiled ``_ckernels`` module.
"""

from collections import namedtuple

import numpy as np

from . import criterion, invariants as inv

NAME = "python"

_Moduli = namedtuple("_Moduli", "G Gc B Bc Kc")
_Shape = namedtuple("_Shape", "alpha beta gamma M")


def invariants(sigma, mu, moduli):
    """Return ``(p, q, q_s, theta)``."""
    sigma = np.asarray(sigma, dtype=float)
    mu = np.asarray(mu, dtype=float)
    m = _Moduli(*moduli)
    return (
        inv.mean_stress(sigma),
        inv.q_cosserat(m, sigma, mu),
        inv.q_symmetric(sigma),
        inv.lode_angle(sigma),
    )


def surface(sigma, mu, moduli, shape, corner_tol=inv.CORNER_TOL):
    """Return ``(q Gamma + M p, d/dsigma, d/dmu)``."""
    sigma = np.asarray(sigma, dtype=float)
    mu = np.asarray(mu, dtype=float)
    m = _Moduli(*moduli)
    sh = _Shape(*shape)
    d_sigma, d_mu = criterion.surface_gradients(sh, m, sigma, mu, corner_tol)
    value = criterion.surface_value(sh, m, sigma, mu)
    return value, d_sigma, d_mu
