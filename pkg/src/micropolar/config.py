"""Run configuration for the command-line driver.

A configuration is one JSON document with a ``schema`` version field::

    {
      "schema": 1,
      "material": {"K": 2000, "G": 1000, "Gc": 500, "T": 10, "B": 20, "Bc": 30},
      "criterion": {
        "preset": "mohr-coulomb", "phi_deg": 30, "eps_round": 1e-6,
        "cohesion": {"c_i": 10, "c_f": 5, "a": 3},
        "potential": {"preset": "mohr-coulomb", "phi_deg": 10}
      },
      "initial_state": {"sigma": [[...]], "mu": [[...]], "lambda": 0},
      "load": {"path": "pure-shear", "magnitude": 0.01, "steps": 100},
      "surface": {"p_section": 0, "n_theta": 61, "p_range": [-10, 10], "n_p": 21}
    }

Angles are given in degrees and converted to radians on parsing.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .criterion import FRICTIONAL, PRESETS, GCCriterion, HardeningLaw, preset
from .elasticity import CosseratMaterial
from .errors import MicropolarError
from .integrator import MaterialState, Settings
from .kinematics import cosserat_strain

SCHEMA_VERSION = 1
DEFAULT_EPS_ROUND = 1e-6
NAMED_PATHS = ("pure-shear", "simple-shear", "triaxial-compression", "bending", "torsion")


class ConfigError(MicropolarError, ValueError):
    """Invalid or inconsistent configuration."""


def _get(d, key, kind, default=None, required=False):
    if key not in d:
        if required:
            raise ConfigError(f"missing required field '{key}'")
        return default
    v = d[key]
    if kind is float:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigError(f"field '{key}' must be a finite number")
        return float(v)
    if kind is int:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"field '{key}' must be an integer")
        return v
    if not isinstance(v, kind):
        raise ConfigError(f"field '{key}' has the wrong type")
    return v


def _tensor(v, name):
    if v is None:
        return np.zeros((3, 3))
    try:
        a = np.asarray(v, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"'{name}' must be a 3x3 array of numbers") from exc
    if a.shape != (3, 3) or not np.all(np.isfinite(a)):
        raise ConfigError(f"'{name}' must be a finite 3x3 array")
    return a


def named_path(name, magnitude):
    """Total ``(d_gamma, d_chi)`` of a named proportional load path.

    pure-shear
        symmetric shear strain ``gamma_12 = gamma_21 = magnitude``.
    simple-shear
        displacement gradient ``u_1,2 = magnitude`` with fixed micro-rotation.
    triaxial-compression
        isochoric ``diag(-1, 1/2, 1/2) * magnitude``.
    bending
        bending curvature ``chi_12 = magnitude``.
    torsion
        torsional curvature ``chi_33 = magnitude``.
    """
    g = np.zeros((3, 3))
    c = np.zeros((3, 3))
    if name == "pure-shear":
        g[0, 1] = g[1, 0] = magnitude
    elif name == "simple-shear":
        grad_u = np.zeros((3, 3))
        grad_u[0, 1] = magnitude
        g = cosserat_strain(grad_u, np.zeros(3))
    elif name == "triaxial-compression":
        g = np.diag([-1.0, 0.5, 0.5]) * magnitude
    elif name == "bending":
        c[0, 1] = magnitude
    elif name == "torsion":
        c[2, 2] = magnitude
    else:
        raise ConfigError(f"unknown load path '{name}', expected one of {', '.join(NAMED_PATHS)}")
    return g, c


@dataclass
class RunConfig:
    material: CosseratMaterial
    criterion: GCCriterion
    initial_state: MaterialState
    increments: list = field(default_factory=list)
    surface: dict = field(default_factory=dict)
    settings: Settings = field(default_factory=Settings)
    digest: str = ""
    raw: dict = field(default_factory=dict)

    @property
    def sigma0(self):
        from .criterion import sigma0

        return sigma0(self.criterion.hardening, self.initial_state.lam)


def _material(d):
    if not isinstance(d, dict):
        raise ConfigError("'material' must be an object")
    try:
        if "E" in d:
            return CosseratMaterial.from_young(
                _get(d, "E", float, required=True),
                _get(d, "nu", float, required=True),
                _get(d, "Gc", float, required=True),
                _get(d, "T", float, required=True),
                _get(d, "B", float, required=True),
                _get(d, "Bc", float, required=True),
            )
        return CosseratMaterial(**{k: _get(d, k, float, required=True) for k in ("K", "G", "Gc", "T", "B", "Bc")})
    except ValueError as exc:
        raise ConfigError(f"material: {exc}") from exc


def _shape(d, eps_default, where):
    name = _get(d, "preset", str, required=True)
    if name not in PRESETS:
        raise ConfigError(f"{where}: unknown preset '{name}', expected one of {', '.join(PRESETS)}")
    phi_deg = _get(d, "phi_deg", float, 0.0)
    eps = _get(d, "eps_round", float, eps_default)
    if name in FRICTIONAL and not 0.0 < phi_deg < 90.0:
        raise ConfigError(f"{where}: preset '{name}' needs 0 < phi_deg < 90")
    phi = math.radians(phi_deg) if name in FRICTIONAL else None
    try:
        return preset(name, phi, eps_round=eps), (phi or 0.0)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _criterion(d):
    if not isinstance(d, dict):
        raise ConfigError("'criterion' must be an object")
    eps = _get(d, "eps_round", float, DEFAULT_EPS_ROUND)
    if not 0.0 <= eps < 1.0:
        raise ConfigError("eps_round must lie in [0, 1)")
    shape, phi = _shape(d, eps, "criterion")
    coh = _get(d, "cohesion", dict, required=True)
    try:
        hard = HardeningLaw(
            c_i=_get(coh, "c_i", float, required=True),
            c_f=_get(coh, "c_f", float, _get(coh, "c_i", float, required=True)),
            a=_get(coh, "a", float, 0.0),
            phi=phi,
        )
    except ValueError as exc:
        raise ConfigError(f"cohesion: {exc}") from exc
    pot = _get(d, "potential", dict, None)
    pshape = shape if pot is None else _shape(pot, eps, "potential")[0]
    return GCCriterion(yield_shape=shape, potential=pshape, hardening=hard)


def _load(d, steps_override):
    if not isinstance(d, dict):
        raise ConfigError("'load' must be an object")
    if "increments" in d:
        incs = d["increments"]
        if not isinstance(incs, list) or not incs:
            raise ConfigError("'increments' must be a non-empty list")
        out = []
        for i, inc in enumerate(incs):
            if not isinstance(inc, dict):
                raise ConfigError(f"increment {i} must be an object")
            out.append((_tensor(inc.get("d_gamma"), f"increments[{i}].d_gamma"), _tensor(inc.get("d_chi"), f"increments[{i}].d_chi")))
        if steps_override is not None:
            raise ConfigError("--steps applies only to proportional load programs")
        return out
    steps = steps_override if steps_override is not None else _get(d, "steps", int, required=True)
    if steps < 1:
        raise ConfigError("step count must be at least 1")
    if "path" in d:
        g, c = named_path(_get(d, "path", str), _get(d, "magnitude", float, required=True))
    else:
        g = _tensor(d.get("d_gamma"), "load.d_gamma")
        c = _tensor(d.get("d_chi"), "load.d_chi")
    return [(g / steps, c / steps)] * steps


def _surface(d):
    if d is None:
        d = {}
    if not isinstance(d, dict):
        raise ConfigError("'surface' must be an object")
    out = {
        "p_section": _get(d, "p_section", float, 0.0),
        "n_theta": _get(d, "n_theta", int, 61),
        "n_p": _get(d, "n_p", int, 21),
        "p_range": d.get("p_range"),
    }
    if out["n_theta"] < 2 or out["n_p"] < 2:
        raise ConfigError("surface grids need at least two points")
    if out["p_range"] is not None:
        pr = out["p_range"]
        if not (isinstance(pr, list) and len(pr) == 2 and all(isinstance(x, (int, float)) for x in pr) and pr[0] < pr[1]):
            raise ConfigError("p_range must be [p_min, p_max] with p_min < p_max")
        out["p_range"] = [float(pr[0]), float(pr[1])]
    return out


def _settings(d):
    if d is None:
        return Settings()
    if not isinstance(d, dict):
        raise ConfigError("'settings' must be an object")
    known = Settings.__dataclass_fields__
    for k in d:
        if k not in known:
            raise ConfigError(f"unknown setting '{k}'")
    kw = {k: (_get(d, k, int) if known[k].type in (int, "int") else _get(d, k, float)) for k in d}
    return Settings(**kw)


def config_digest(raw):
    """SHA-256 of the canonical JSON form of a configuration."""
    text = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def parse_config(raw, steps_override=None, need_load=True):
    """Validate a decoded JSON configuration.

    Raises
    ------
    ConfigError
        On any missing, mistyped or out-of-domain entry.
    """
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    version = raw.get("schema")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema version {version!r}, expected {SCHEMA_VERSION}")
    mat = _material(raw.get("material"))
    cr = _criterion(raw.get("criterion"))
    init = raw.get("initial_state") or {}
    if not isinstance(init, dict):
        raise ConfigError("'initial_state' must be an object")
    lam = _get(init, "lambda", float, 0.0)
    if lam < 0.0:
        raise ConfigError("initial lambda must be non-negative")
    state = MaterialState(sigma=_tensor(init.get("sigma"), "initial_state.sigma"), mu=_tensor(init.get("mu"), "initial_state.mu"), lam=lam)
    if "load" in raw:
        incs = _load(raw["load"], steps_override)
    elif need_load:
        raise ConfigError("missing required field 'load'")
    else:
        incs = []
    return RunConfig(
        material=mat,
        criterion=cr,
        initial_state=state,
        increments=incs,
        surface=_surface(raw.get("surface")),
        settings=_settings(raw.get("settings")),
        digest=config_digest(raw),
        raw=raw,
    )


def load_config(path, steps_override=None, need_load=True):
    """Read and validate a JSON configuration file."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read configuration: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    return parse_config(raw, steps_override, need_load)
