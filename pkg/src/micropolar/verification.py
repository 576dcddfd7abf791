"""Independent oracles and numerical checks.

Nothing here is used by the integrator; these routines exist to validate it.

* exact Mohr-Coulomb and Tresca criteria in principal stresses,
* a closest-point-projection oracle for associated return maps,
* central finite-difference helpers,
* random state generators shared by the test-suite and ``verify``.
"""

import math

import numpy as np
from scipy.optimize import brentq

from .criterion import gamma_derivative, gamma_value, potential_gradients, sigma0
from .elasticity import curvature_map, strain_map
from .errors import CornerSingularityError, InvalidInputError
from .integrator import MaterialState
from .invariants import lode_angle
from .tensors import IDENTITY, ddot, dev, norm, random_rotation, skw, sym, trace

SIXTH_PI = math.pi / 6.0


# --------------------------------------------------------------------------
# exact criteria


def principal_stresses(sigma):
    """Eigenvalues of the symmetric part, in descending order."""
    return np.linalg.eigvalsh(sym(sigma))[::-1]


def mohr_coulomb_exact(sigma, c, phi):
    """Largest of the six Mohr-Coulomb plane expressions (tension positive).

    ``(s_i - s_j) + (s_i + s_j) sin(phi) - 2 c cos(phi)`` over ordered
    pairs; positive means outside the surface.
    """
    s = principal_stresses(sigma)
    sp, cp = math.sin(phi), math.cos(phi)
    best = -math.inf
    for i in range(3):
        for j in range(3):
            if i != j:
                best = max(best, (s[i] - s[j]) + (s[i] + s[j]) * sp - 2.0 * c * cp)
    return best


def tresca_exact(sigma, c):
    """``max |s_i - s_j| - 2c``."""
    s = principal_stresses(sigma)
    return float(s[0] - s[2]) - 2.0 * c


def stress_invariants(sigma):
    """``I1, I2, I3`` of the symmetric part (sign convention ``I2 = s1s2 + s2s3 + s3s1``)."""
    s = principal_stresses(sigma)
    return s.sum(), s[0] * s[1] + s[1] * s[2] + s[2] * s[0], s.prod()


# --------------------------------------------------------------------------
# finite differences


def fd_gradient(fun, a, h=1e-6):
    """Central-difference gradient of a scalar function of a 3x3 tensor.

    The step is relative, ``h * max(1, |a|)``.
    """
    a = np.asarray(a, dtype=float)
    step = h * max(1.0, norm(a))
    out = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            e = np.zeros((3, 3))
            e[i, j] = step
            out[i, j] = (fun(a + e) - fun(a - e)) / (2.0 * step)
    return out


def fd_derivative(fun, x, h=1e-6):
    step = h * max(1.0, abs(x))
    return (fun(x + step) - fun(x - step)) / (2.0 * step)


def relative_error(a, b, floor=1.0):
    """``|a - b| / max(|b|, floor)`` with Frobenius norms for arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), floor))


# --------------------------------------------------------------------------
# random states


def random_material(rng):
    """Random valid moduli with characteristic lengths of order one."""
    K = rng.uniform(500.0, 5000.0)
    G = rng.uniform(300.0, 3000.0)
    Gc = G * rng.uniform(0.1, 2.0)
    B = G * rng.uniform(0.1, 2.0)
    Bc = G * rng.uniform(0.1, 2.0)
    T = -2.0 * B / 3.0 + G * rng.uniform(0.1, 2.0)
    from .elasticity import CosseratMaterial

    return CosseratMaterial(K=K, G=G, Gc=Gc, T=T, B=B, Bc=Bc)


def random_tensor(rng, scale=1.0):
    return rng.normal(size=(3, 3)) * scale


def random_symmetric(rng, scale=1.0):
    a = rng.normal(size=(3, 3))
    return 0.5 * (a + a.T) * scale


def random_cosserat_state(rng, mat, scale=1.0, skew=0.2, couple=0.2, pressure=0.5):
    """Stress and couple stress dominated by the symmetric deviator.

    `skew` and `couple` set the size of the skew stress and of the couple
    stress (in units of ``scale`` and ``scale * l1``) relative to the
    symmetric part; `pressure` sets the mean stress.
    """
    ell = mat.lengths[0]
    sigma = random_symmetric(rng, scale) + pressure * scale * rng.normal() * IDENTITY
    w = rng.normal(size=(3, 3))
    sigma = sigma + skew * scale * (w - w.T) / 2.0
    mu = couple * scale * ell * rng.normal(size=(3, 3))
    return sigma, mu


def random_rotations(rng, n):
    return [random_rotation(rng) for _ in range(n)]


# --------------------------------------------------------------------------
# closest-point-projection oracle


class ProjectionResult:
    """Solution of the closest-point projection."""

    def __init__(self, sigma, mu, delta_lambda, theta, apex):
        self.sigma = sigma
        self.mu = mu
        self.delta_lambda = delta_lambda
        self.theta = theta
        self.apex = apex

    def __repr__(self):
        return f"ProjectionResult(delta_lambda={self.delta_lambda!r}, theta={self.theta!r}, apex={self.apex!r})"


def _energy_coordinates(mat, sigma, mu):
    """Split into coordinates where the complementary energy is ``|z|^2/2 + w^2/2``."""
    s_sym = dev(sym(sigma))
    z_sym = s_sym / math.sqrt(2.0 * mat.G)
    rest = np.concatenate(
        [
            (skw(sigma) / math.sqrt(2.0 * mat.Gc)).ravel(),
            (dev(sym(mu)) / math.sqrt(2.0 * mat.B)).ravel(),
            (skw(mu) / math.sqrt(2.0 * mat.Bc)).ravel(),
            [trace(mu) / (3.0 * math.sqrt(mat.Kc))],
        ]
    )
    w = trace(sigma) / (3.0 * math.sqrt(mat.K))
    return z_sym, rest, w


def _from_energy_coordinates(mat, z_sym, rest, w):
    sig = z_sym * math.sqrt(2.0 * mat.G)
    sig = sig + rest[:9].reshape(3, 3) * math.sqrt(2.0 * mat.Gc)
    sig = sig + w * math.sqrt(mat.K) * IDENTITY
    mu = rest[9:18].reshape(3, 3) * math.sqrt(2.0 * mat.B)
    mu = mu + rest[18:27].reshape(3, 3) * math.sqrt(2.0 * mat.Bc)
    mu = mu + rest[27] * math.sqrt(mat.Kc) * IDENTITY
    return sig, mu


def _unit_direction(theta):
    """Unit eigenvalue vector (descending) of a deviator with Lode angle `theta`."""
    v = np.array([math.sin(2.0 * math.pi / 3.0 - theta), math.sin(-theta), math.sin(-theta - 2.0 * math.pi / 3.0)])
    return v / math.sqrt(1.5)


class _Projector:
    """Projection onto ``q Gamma + M p = s0`` for fixed ``s0``.

    In energy coordinates ``q = sqrt(3G) |z|`` and the minimiser is coaxial
    with the trial symmetric deviator. For a fixed Lode angle the remaining
    problem is solved in closed form, leaving a scalar minimisation over the
    Lode angle, done by a grid scan followed by root-finding on the
    analytic derivative.
    """

    def __init__(self, mat, shape, sigma_tr, mu_tr, grid=2001):
        self.mat = mat
        self.shape = shape
        self.z_sym_tr, self.rest_tr, self.w_tr = _energy_coordinates(mat, sigma_tr, mu_tr)
        self.rho_tr = norm(self.z_sym_tr)
        self.r_tr = float(np.linalg.norm(self.rest_tr))
        self.theta_tr = lode_angle(sigma_tr) if self.rho_tr > 0.0 else 0.0
        self.c3g = math.sqrt(3.0 * mat.G)
        self.grid = np.linspace(-SIXTH_PI, SIXTH_PI, grid)

    # --- closed-form inner problem -------------------------------------
    def _a(self, theta):
        c = self.rho_tr * math.cos(theta - self.theta_tr)
        dc = -self.rho_tr * math.sin(theta - self.theta_tr)
        if c > 0.0:
            a = math.hypot(self.r_tr, c)
            return a, c * dc / a if a > 0.0 else 0.0, c
        return self.r_tr, 0.0, c

    def _gamma(self, theta):
        g = gamma_value(self.shape, theta)
        try:
            dg = gamma_derivative(self.shape, theta)
        except CornerSingularityError:
            dg = 0.0
        return g, dg

    def value(self, theta, s0):
        """Objective (up to a constant) and its theta-derivative."""
        a, da, _ = self._a(theta)
        g, dg = self._gamma(theta)
        M = self.shape.M
        if M > 0.0:
            mk = M * math.sqrt(self.mat.K)
            k = self.c3g * g / mk
            dk = self.c3g * dg / mk
            d = s0 / mk - self.w_tr
            A = a + k * d
            if A <= 0.0:
                return 0.0, 0.0
            val = -0.5 * A * A / (1.0 + k * k)
            dA = da + dk * d
            dval = -(A * dA * (1.0 + k * k) - A * A * k * dk) / (1.0 + k * k) ** 2
            return val, dval
        R = s0 / (self.c3g * g)
        dR = -R * dg / g
        val = 0.5 * R * R - R * a
        dval = R * dR - dR * a - R * da
        return val, dval

    def solve_theta(self, s0):
        vals = np.array([self.value(t, s0)[0] for t in self.grid])
        i = int(np.argmin(vals))
        lo = self.grid[max(i - 1, 0)]
        hi = self.grid[min(i + 1, len(self.grid) - 1)]
        d_lo = self.value(lo, s0)[1]
        d_hi = self.value(hi, s0)[1]
        if d_lo < 0.0 < d_hi:
            return brentq(lambda t: self.value(t, s0)[1], lo, hi, xtol=1e-15, rtol=1e-15, maxiter=200)
        return float(self.grid[i])

    def project(self, s0):
        theta = self.solve_theta(s0)
        a, _, c = self._a(theta)
        g, _ = self._gamma(theta)
        M = self.shape.M
        if M > 0.0:
            mk = M * math.sqrt(self.mat.K)
            k = self.c3g * g / mk
            w0 = s0 / mk
            R = max(0.0, (a + k * (w0 - self.w_tr)) / (1.0 + k * k))
            w = w0 - k * R
        else:
            R = s0 / (self.c3g * g)
            w = self.w_tr
        if c > 0.0 and a > 0.0:
            cos_psi, sin_psi = c / a, self.r_tr / a
        else:
            cos_psi, sin_psi = 0.0, 1.0
        if self.r_tr == 0.0:
            cos_psi, sin_psi = 1.0, 0.0
        # symmetric deviator coaxial with the trial
        vals, vecs = np.linalg.eigh(sym(self.z_sym_tr))
        vecs = vecs[:, ::-1]
        z_sym = R * cos_psi * (vecs @ np.diag(_unit_direction(theta)) @ vecs.T)
        rest = R * sin_psi * (self.rest_tr / self.r_tr) if self.r_tr > 0.0 else np.zeros_like(self.rest_tr)
        sig, mu = _from_energy_coordinates(self.mat, z_sym, rest, w)
        return sig, mu, theta, R == 0.0


def _multiplier(mat, cr, sigma_tr, mu_tr, sig, mu, apex):
    """Plastic multiplier implied by a projected point (normality in the energy metric)."""
    d_gp = strain_map(mat, sigma_tr - sig)
    d_cp = curvature_map(mat, mu_tr - mu)
    if apex:
        return trace(d_gp) / cr.potential.M
    ns, nm = potential_gradients(cr, mat, sig, mu)
    return (ddot(d_gp, ns) + ddot(d_cp, nm)) / (ddot(ns, ns) + ddot(nm, nm))


def closest_point_projection(mat, cr, trial, grid=2001):
    """Associated return map computed as a closest-point projection.

    Minimises the complementary energy of the plastic correction subject to
    ``f = 0``, and solves the hardening consistency ``lambda = lambda_n +
    delta_lambda`` by bracketing root-finding on the multiplier.

    Parameters
    ----------
    mat : CosseratMaterial
    cr : GCCriterion
        Must be associated.
    trial : MaterialState
        Elastic trial state.

    Returns
    -------
    ProjectionResult

    Raises
    ------
    InvalidInputError
        For non-associated criteria.
    """
    if not cr.is_associated:
        raise InvalidInputError("the closest-point oracle applies to associated flow only")
    proj = _Projector(mat, cr.yield_shape, trial.sigma, trial.mu, grid)

    def solve(dl):
        s0 = sigma0(cr.hardening, trial.lam + dl)
        sig, mu, theta, apex = proj.project(s0)
        return sig, mu, theta, apex, _multiplier(mat, cr, trial.sigma, trial.mu, sig, mu, apex)

    sig, mu, theta, apex, dl = solve(0.0)
    if cr.hardening.a > 0.0 and cr.hardening.c_i != cr.hardening.c_f:

        def h(x):
            return solve(x)[4] - x

        lo, hi = 0.0, max(dl, 1e-300)
        while h(hi) > 0.0:
            lo, hi = hi, 2.0 * hi
        dl = brentq(h, lo, hi, xtol=1e-16, rtol=1e-15, maxiter=500)
        sig, mu, theta, apex, _ = solve(dl)
    return ProjectionResult(sig, mu, dl, theta, apex)


def plastic_trial(rng, mat, cr, scale, overstress=(1.05, 3.0), **kwargs):
    """Random trial state with ``f`` between the given multiples of the surface.

    The symmetric deviator, skew stress and couple stress are drawn with
    :func:`random_cosserat_state` and rescaled radially about the surface.
    """
    from .criterion import yield_value

    s0 = sigma0(cr.hardening, 0.0)
    while True:
        sig, mu = random_cosserat_state(rng, mat, scale, **kwargs)
        p = trace(sig) / 3.0
        dsig = sig - p * IDENTITY
        f_dev = yield_value(cr, mat, dsig, mu, 0.0) + s0
        if f_dev <= 0.0:
            continue
        room = s0 - cr.yield_shape.M * p
        if room <= 0.0:
            continue
        target = room * rng.uniform(*overstress)
        t = target / f_dev
        return MaterialState(sigma=dsig * t + p * IDENTITY, mu=mu * t)


def rotate_state(sigma, mu, R):
    return R @ sigma @ R.T, R @ mu @ R.T


__all__ = [
    "ProjectionResult",
    "closest_point_projection",
    "fd_derivative",
    "fd_gradient",
    "mohr_coulomb_exact",
    "plastic_trial",
    "principal_stresses",
    "random_cosserat_state",
    "random_material",
    "random_rotations",
    "random_symmetric",
    "random_tensor",
    "relative_error",
    "rotate_state",
    "stress_invariants",
    "tresca_exact",
]
