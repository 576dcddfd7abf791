"""Command-line driver.

::

    micropolar simulate CONFIG [--out DIR] [--steps N]
    micropolar surface  CONFIG [--out DIR]
    micropolar verify  [CONFIG] [--out DIR] [--seed N]

Exit codes: 0 success, 1 a verification property failed, 2 configuration
error, 3 integration failure (the failing step is reported on stderr).
"""

import argparse
import csv
import itertools
import math
import os
import sys

import numpy as np

from . import __version__, kernels
from .checks import REFERENCE_MATERIAL, run_suite
from .config import ConfigError, load_config
from .criterion import cohesion, gamma_value, sigma0, yield_value
from .errors import IntegrationError, MicropolarError
from .integrator import integrate_path

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_INTEGRATION = 3

SIXTH_PI = math.pi / 6.0
COMPONENTS = [f"{i}{j}" for i in range(1, 4) for j in range(1, 4)]
SIMULATE_COLUMNS = (
    ["step", "p", "q", "q_s", "theta_s", "lambda", "cohesion", "f"]
    + [f"sigma_{c}" for c in COMPONENTS]
    + [f"mu_{c}" for c in COMPONENTS]
    + ["plastic", "iterations"]
)
UNITS = (
    "stresses (p, q, q_s, cohesion, f, sigma_ij) in the config's stress unit; "
    "couple stresses mu_ij in stress x length; angles in radians; lambda dimensionless"
)

# pi-plane basis for principal stresses
_E1 = np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0)
_E2 = np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0)


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _write_csv(path, title, cfg, columns, rows, extra=()):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# micropolar {title}\n")
        fh.write(f"# version: {__version__}\n")
        fh.write(f"# config_sha256: {cfg.digest}\n")
        fh.write(f"# units: {UNITS}\n")
        for line in extra:
            fh.write(f"# {line}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _state_row(k, cfg, state, plastic, iterations):
    mat, cr = cfg.material, cfg.criterion
    p, q, q_s, theta = kernels.invariants(state.sigma, state.mu, mat.moduli)
    f = yield_value(cr, mat, state.sigma, state.mu, state.lam)
    return (
        [k, p, q, q_s, theta, state.lam, cohesion(cr.hardening, state.lam), f]
        + list(state.sigma.ravel())
        + list(state.mu.ravel())
        + [plastic, iterations]
    )


def _prepare_out(out):
    try:
        os.makedirs(out, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory: {exc}") from exc


def cmd_simulate(args):
    cfg = load_config(args.config, steps_override=args.steps)
    _prepare_out(args.out)
    mat, cr = cfg.material, cfg.criterion
    state = cfg.initial_state
    s0 = sigma0(cr.hardening, state.lam)
    if yield_value(cr, mat, state.sigma, state.mu, state.lam) > cfg.settings.f_tol * s0:
        raise ConfigError("initial state lies outside the yield surface")
    rows = [_state_row(0, cfg, state, False, 0)]
    status = EXIT_OK
    for k, inc in enumerate(cfg.increments, start=1):
        try:
            res = integrate_path(mat, cr, state, [inc], cfg.settings)[0]
        except IntegrationError as exc:
            print(f"error: integration failed at step {k}: {exc.__cause__ or exc}", file=sys.stderr)
            status = EXIT_INTEGRATION
            break
        state = res.state
        rows.append(_state_row(k, cfg, state, res.plastic, res.iterations))
    path = os.path.join(args.out, "simulate.csv")
    _write_csv(path, "simulate", cfg, SIMULATE_COLUMNS, rows, [f"steps: {len(cfg.increments)}"])
    if status == EXIT_OK:
        print(f"wrote {path} ({len(rows) - 1} steps)")
    return status


def deviatoric_section(shape, radius_tc, n_theta):
    """Deviatoric section over the full pi-plane.

    Returns rows ``(omega, theta_s, r, rho, x, y)`` sorted by the polar angle
    ``omega`` in the pi-plane. ``r`` is the equivalent-stress radius
    ``radius_tc / Gamma(theta_s)``; ``rho = sqrt(2/3) r`` is the Euclidean
    distance from the hydrostatic axis. The sector ``[-pi/6, pi/6]`` is
    extended by the six permutations of the principal stresses.
    """
    from .criterion import principal_values_from_invariants

    pts = {}
    for theta in np.linspace(-SIXTH_PI, SIXTH_PI, n_theta):
        r = radius_tc / gamma_value(shape, theta)
        s = principal_values_from_invariants(0.0, r, theta)
        for perm in itertools.permutations(range(3)):
            v = s[list(perm)]
            x, y = float(v @ _E1), float(v @ _E2)
            omega = math.atan2(y, x) % (2.0 * math.pi)
            key = round(omega, 12)
            if key not in pts:
                pts[key] = (omega, float(theta), r, math.sqrt(2.0 / 3.0) * r, x, y)
    return [pts[k] for k in sorted(pts)]


def cmd_surface(args):
    cfg = load_config(args.config, need_load=False)
    _prepare_out(args.out)
    shape = cfg.criterion.yield_shape
    s0 = cfg.sigma0
    M = shape.M
    opts = cfg.surface
    p_sec = opts["p_section"]
    radius_tc = s0 - M * p_sec
    if radius_tc <= 0.0:
        raise ConfigError(f"p_section = {p_sec} lies beyond the apex p = {s0 / M:.6g} (negative section radius)")
    dev_rows = deviatoric_section(shape, radius_tc, opts["n_theta"])
    path_d = os.path.join(args.out, "surface_deviatoric.csv")
    _write_csv(
        path_d,
        "surface deviatoric section",
        cfg,
        ["omega", "theta_s", "r", "rho", "x", "y"],
        dev_rows,
        [f"p_section: {p_sec!r}", f"preset: {shape.name}", "r = (sigma_0 - M p) / Gamma(theta_s); rho = sqrt(2/3) r; x, y in the pi-plane"],
    )
    if opts["p_range"] is not None:
        p_lo, p_hi = opts["p_range"]
    elif M > 0.0:
        p_lo, p_hi = -2.0 * s0 / M, s0 / M
    else:
        p_lo, p_hi = -s0, s0
    if M > 0.0 and p_hi > s0 / M * (1.0 + 1e-12):
        raise ConfigError(f"p_range extends beyond the apex p = {s0 / M:.6g}")
    ps = np.linspace(p_lo, p_hi, opts["n_p"])
    mer_rows = [(p, max(s0 - M * p, 0.0)) for p in ps]
    path_m = os.path.join(args.out, "surface_meridional.csv")
    _write_csv(path_m, "surface meridional section", cfg, ["p", "q"], mer_rows, ["theta_s = -pi/6 (triaxial compression)"])
    print(f"wrote {path_d} and {path_m}")
    return EXIT_OK


def cmd_verify(args):
    mat = REFERENCE_MATERIAL
    if args.config is not None:
        mat = load_config(args.config, need_load=False).material
    rng = np.random.default_rng(args.seed)
    results = run_suite(rng, mat, quick=args.quick)
    lines = [f"micropolar verify (seed {args.seed}, kernels: {kernels.BACKEND})"] + [r.line() for r in results]
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    text = "\n".join(lines)
    print(text)
    if args.out is not None:
        _prepare_out(args.out)
        with open(os.path.join(args.out, "verify.txt"), "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return EXIT_OK if n_fail == 0 else EXIT_VERIFY_FAILED


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomised checks (default 0)")
    common.add_argument("--steps", type=int, default=None, help="override the step count of a proportional load program")

    parser = argparse.ArgumentParser(prog="micropolar", description="Cosserat elastoplasticity driver")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="integrate a load program")
    p.add_argument("config")
    p.add_argument("--out", default=".", help="output directory (default: current directory)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("surface", parents=[common], help="trace deviatoric and meridional sections")
    p.add_argument("config")
    p.add_argument("--out", default=".", help="output directory (default: current directory)")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("verify", parents=[common], help="run the property suite")
    p.add_argument("config", nargs="?", default=None)
    p.add_argument("--out", default=None, help="also write verify.txt into this directory")
    p.add_argument("--quick", action="store_true", help="fewer random samples")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    if args.steps is not None and args.steps < 1:
        print("error: --steps must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationError as exc:
        print(f"error: integration failed at step {exc.step}: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    except MicropolarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
