"""Implicit (backward-Euler) stress-point integration.

The corrector solves 19 equations (9 stress, 9 couple stress, 1
consistency) in the unknowns ``(sigma, mu, dlam)`` by Newton's method. The
Jacobian uses the analytic flow directions and central finite differences
of those directions for the second derivatives of the plastic potential.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from .criterion import hardening_modulus, sigma0
from .elasticity import couple_map, curvature_map, strain_map, stress_map
from .errors import ConsistencyError, IntegrationError, SingularGradientError
from .invariants import CORNER_TOL, stress_floor
from .tensors import IDENTITY, as_tensor, dev, norm, trace


@dataclass(frozen=True)
class Settings:
    newton_tol: float = 1e-10
    f_tol: float = 1e-10
    max_iter: int = 50
    max_halvings: int = 10
    max_subdivisions: int = 20
    fd_step: float = 1e-7
    corner_tol: float = CORNER_TOL


DEFAULT_SETTINGS = Settings()


def _zeros():
    return np.zeros((3, 3))


@dataclass(frozen=True)
class MaterialState:
    sigma: np.ndarray = field(default_factory=_zeros)
    mu: np.ndarray = field(default_factory=_zeros)
    lam: float = 0.0
    gamma_p: np.ndarray = field(default_factory=_zeros)
    chi_p: np.ndarray = field(default_factory=_zeros)

    def __post_init__(self):
        for name in ("sigma", "mu", "gamma_p", "chi_p"):
            object.__setattr__(self, name, as_tensor(getattr(self, name)))
        if not self.lam >= 0.0:
            raise ValueError("accumulated plastic multiplier must be non-negative")
        object.__setattr__(self, "lam", float(self.lam))


@dataclass(frozen=True)
class StepResult:
    state: MaterialState
    plastic: bool
    iterations: int = 0
    residual: float = 0.0
    delta_lambda: float = 0.0
    apex: bool = False


def stress_scale(cr, lam, sigma):
    """Stress unit used to normalise residuals: ``sigma_0`` or, for zero cohesion, ``|sigma|``."""
    s0 = sigma0(cr.hardening, lam)
    return s0 if s0 > 0.0 else max(norm(sigma), 1e-300)


def trial_state(mat, cr, state_n, d_gamma, d_chi):
    """Elastic predictor: add the elastic response of the full increment."""
    d_gamma = as_tensor(d_gamma)
    d_chi = as_tensor(d_chi)
    return replace(
        state_n,
        sigma=state_n.sigma + stress_map(mat, d_gamma),
        mu=state_n.mu + couple_map(mat, d_chi),
    )


def yield_excess(mat, cr, state):
    """Yield function value at `state` (uses the active kernel backend)."""
    p, q, _, theta = kernels.invariants(state.sigma, state.mu, mat.moduli)
    from .criterion import gamma_value

    return q * gamma_value(cr.yield_shape, theta) + cr.yield_shape.M * p - sigma0(cr.hardening, state.lam)


class _Problem:
    """Residual and Jacobian of the backward-Euler system in scaled variables.

    Unknowns ``x = (sigma/S, mu/(S l), dlam G/S)`` where ``S`` is the stress
    scale and ``l`` the first characteristic length.
    """

    def __init__(self, mat, cr, trial, settings):
        self.mat = mat
        self.cr = cr
        self.settings = settings
        self.moduli = mat.moduli
        self.pot = cr.potential.params
        self.yld = cr.yield_shape.params
        self.associated = cr.is_associated
        self.lam_n = trial.lam
        self.sig_tr = trial.sigma
        self.mu_tr = trial.mu
        self.S = stress_scale(cr, trial.lam, trial.sigma)
        self.ell = mat.lengths[0]
        self.G = mat.G

    def unpack(self, x):
        sig = x[:9].reshape(3, 3) * self.S
        mu = x[9:18].reshape(3, 3) * (self.S * self.ell)
        dlam = x[18] * self.S / self.G
        return sig, mu, dlam

    def pack(self, sig, mu, dlam):
        return np.concatenate([(sig / self.S).ravel(), (mu / (self.S * self.ell)).ravel(), [dlam * self.G / self.S]])

    def flow(self, sig, mu):
        return kernels.surface(sig, mu, self.moduli, self.pot, self.settings.corner_tol)

    def normal(self, sig, mu):
        if self.associated:
            return self.flow(sig, mu)
        return kernels.surface(sig, mu, self.moduli, self.yld, self.settings.corner_tol)

    def residual(self, x):
        sig, mu, dlam = self.unpack(x)
        gval, ns, nm = self.flow(sig, mu)
        fval = gval if self.associated else self.normal(sig, mu)[0]
        f = fval - sigma0(self.cr.hardening, self.lam_n + max(dlam, 0.0))
        r_s = (sig - self.sig_tr + dlam * stress_map(self.mat, ns)) / self.S
        r_m = (mu - self.mu_tr + dlam * couple_map(self.mat, nm)) / (self.S * self.ell)
        return np.concatenate([r_s.ravel(), r_m.ravel(), [f / self.S]])

    def jacobian(self, x):
        sig, mu, dlam = self.unpack(x)
        mat, ell = self.mat, self.ell
        _, ns, nm = self.flow(sig, mu)
        _, fs, fm = self.normal(sig, mu)
        J = np.zeros((19, 19))
        hs = self.settings.fd_step * self.S
        hm = self.settings.fd_step * self.S * ell
        for k in range(9):
            i, j = divmod(k, 3)
            e = np.zeros((3, 3))
            e[i, j] = 1.0
            _, ns_p, nm_p = self.flow(sig + hs * e, mu)
            _, ns_m, nm_m = self.flow(sig - hs * e, mu)
            dns = (ns_p - ns_m) / (2.0 * hs)
            dnm = (nm_p - nm_m) / (2.0 * hs)
            J[:9, k] = (e + dlam * stress_map(mat, dns)).ravel()
            J[9:18, k] = (dlam * couple_map(mat, dnm) / ell).ravel()
            J[18, k] = fs[i, j]
            _, ns_p, nm_p = self.flow(sig, mu + hm * e)
            _, ns_m, nm_m = self.flow(sig, mu - hm * e)
            dns = (ns_p - ns_m) / (2.0 * hm)
            dnm = (nm_p - nm_m) / (2.0 * hm)
            J[:9, 9 + k] = (dlam * ell * stress_map(mat, dns)).ravel()
            J[9:18, 9 + k] = (e + dlam * couple_map(mat, dnm)).ravel()
            J[18, 9 + k] = fm[i, j] * ell
        H = hardening_modulus(self.cr.hardening, self.lam_n + max(dlam, 0.0))
        J[:9, 18] = (stress_map(mat, ns) / self.G).ravel()
        J[9:18, 18] = (couple_map(mat, nm) / (ell * self.G)).ravel()
        J[18, 18] = -H / self.G
        return J


def _rnorm(problem, x):
    try:
        return float(np.max(np.abs(problem.residual(x))))
    except SingularGradientError:
        return math.inf


def _newton(problem, settings):
    x = problem.pack(problem.sig_tr, problem.mu_tr, 0.0)
    r = problem.residual(x)
    rn = float(np.max(np.abs(r)))
    it = 0
    polish = 0
    while it < settings.max_iter:
        if rn <= settings.newton_tol:
            polish += 1
            if polish > 2:
                break
        it += 1
        try:
            J = problem.jacobian(x)
            dx = np.linalg.solve(J, -r)
        except (SingularGradientError, np.linalg.LinAlgError):
            if rn <= settings.newton_tol:
                break
            raise IntegrationError("Newton step failed: singular Jacobian or vanishing q")
        t = 1.0
        x_new = x + dx
        rn_new = _rnorm(problem, x_new)
        halvings = 0
        while not rn_new < rn and halvings < settings.max_halvings:
            t *= 0.5
            x_new = x + t * dx
            rn_new = _rnorm(problem, x_new)
            halvings += 1
        if rn <= settings.newton_tol and not rn_new < rn:
            break  # polishing no longer helps
        if not math.isfinite(rn_new):
            raise IntegrationError("Newton line search left the domain of the flow rule")
        x = x_new
        r = problem.residual(x)
        rn = rn_new
    if rn > settings.newton_tol:
        raise IntegrationError(f"Newton did not converge (residual {rn:.3e} after {it} iterations)")
    return x, it, rn


def _apex_return(mat, cr, trial, settings):
    """Return to the cone apex ``p = sigma_0/M, q = 0``; only valid for pressure-sensitive surfaces."""
    M = cr.yield_shape.M
    Mh = cr.potential.M
    if M <= 0.0 or Mh <= 0.0:
        raise IntegrationError("apex return needs pressure-sensitive yield and potential surfaces")
    h = cr.hardening
    p_tr = trace(trial.sigma) / 3.0

    def resid(dl):
        return p_tr - mat.K * Mh * dl - sigma0(h, trial.lam + dl) / M

    if resid(0.0) <= 0.0:
        raise IntegrationError("trial state is not beyond the apex")
    lo, hi = 0.0, max(resid(0.0) / (mat.K * Mh), 1e-300)
    expand = 0
    while resid(hi) > 0.0:
        lo, hi = hi, 2.0 * hi
        expand += 1
        if expand > 200:
            raise IntegrationError("apex return: could not bracket the plastic multiplier")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if resid(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    dl = 0.5 * (lo + hi)
    lam = trial.lam + dl
    p_apex = sigma0(h, lam) / M
    sig = p_apex * IDENTITY
    mu = np.zeros((3, 3))
    d_gp = strain_map(mat, trial.sigma - sig)
    d_cp = curvature_map(mat, trial.mu - mu)
    state = MaterialState(sig, mu, lam, trial.gamma_p + d_gp, trial.chi_p + d_cp)
    return StepResult(state=state, plastic=True, iterations=0, residual=0.0, delta_lambda=dl, apex=True)


def return_map(mat, cr, trial, settings=DEFAULT_SETTINGS):
    """Plastic corrector for a trial state.

    Returns an elastic :class:`StepResult` when ``f(trial) <= f_tol``.

    Raises
    ------
    IntegrationError
        Newton failed to converge (callers may substep).
    ConsistencyError
        The converged plastic multiplier is not positive.
    """
    S = stress_scale(cr, trial.lam, trial.sigma)
    f_tr = yield_excess(mat, cr, trial)
    if f_tr <= settings.f_tol * S:
        return StepResult(state=trial, plastic=False, residual=max(f_tr, 0.0) / S)

    problem = _Problem(mat, cr, trial, settings)
    _, q_tr, _, _ = kernels.invariants(trial.sigma, trial.mu, mat.moduli)
    if q_tr <= stress_floor(trial.sigma):
        return _apex_return(mat, cr, trial, settings)
    try:
        x, iters, rn = _newton(problem, settings)
    except IntegrationError:
        if cr.yield_shape.M > 0.0 and cr.potential.M > 0.0:
            try:
                return _apex_return(mat, cr, trial, settings)
            except IntegrationError:
                pass
        raise
    sig, mu, dlam = problem.unpack(x)
    _, q, _, _ = kernels.invariants(sig, mu, mat.moduli)
    if q <= 1e3 * stress_floor(sig) and cr.yield_shape.M > 0.0:
        return _apex_return(mat, cr, trial, settings)
    if not dlam > 0.0:
        raise ConsistencyError(f"non-positive plastic multiplier {dlam:.3e} at convergence")

    _, ns, nm = problem.flow(sig, mu)
    p_new = trace(trial.sigma) / 3.0 - mat.K * cr.potential.M * dlam
    sig_new = dev(trial.sigma - dlam * stress_map(mat, ns)) + p_new * IDENTITY
    mu_new = trial.mu - dlam * couple_map(mat, nm)
    state = MaterialState(
        sigma=sig_new,
        mu=mu_new,
        lam=trial.lam + dlam,
        gamma_p=trial.gamma_p + dlam * ns,
        chi_p=trial.chi_p + dlam * nm,
    )
    return StepResult(state=state, plastic=True, iterations=iters, residual=rn, delta_lambda=dlam)


def step(mat, cr, state_n, d_gamma, d_chi, settings=DEFAULT_SETTINGS):
    """Predictor plus corrector for one increment, no substepping."""
    return return_map(mat, cr, trial_state(mat, cr, state_n, d_gamma, d_chi), settings)


def _substep(mat, cr, state, d_gamma, d_chi, settings, budget):
    try:
        return [step(mat, cr, state, d_gamma, d_chi, settings)]
    except IntegrationError:
        if budget[0] <= 0:
            raise
        budget[0] -= 1
    first = _substep(mat, cr, state, 0.5 * d_gamma, 0.5 * d_chi, settings, budget)
    second = _substep(mat, cr, first[-1].state, 0.5 * d_gamma, 0.5 * d_chi, settings, budget)
    return first + second


def integrate_path(mat, cr, state_0, path, settings=DEFAULT_SETTINGS):
    """Integrate a list of ``(d_gamma, d_chi)`` increments.

    Increments whose return map fails are bisected (at most
    ``settings.max_subdivisions`` bisections per increment). One
    :class:`StepResult` is emitted per user increment.

    Raises
    ------
    IntegrationError
        With ``.step`` set to the failing increment index.
    """
    results = []
    state = state_0
    for k, (d_gamma, d_chi) in enumerate(path):
        d_gamma = as_tensor(d_gamma)
        d_chi = as_tensor(d_chi)
        budget = [settings.max_subdivisions]
        try:
            parts = _substep(mat, cr, state, d_gamma, d_chi, settings, budget)
        except IntegrationError as exc:
            raise IntegrationError(f"increment {k}: {exc}", step=k) from exc
        last = parts[-1]
        results.append(
            StepResult(
                state=last.state,
                plastic=any(p.plastic for p in parts),
                iterations=sum(p.iterations for p in parts),
                residual=max(p.residual for p in parts),
                delta_lambda=last.state.lam - state.lam,
                apex=any(p.apex for p in parts),
            )
        )
        state = last.state
    return results
