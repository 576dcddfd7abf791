"""Backend selection for the hot invariant/flow kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the pure-Python ``_pykernels`` fallback. Set ``MICROPOLAR_BACKEND`` to
``python`` or ``cython`` to force a choice (``cython`` raises if the
extension is missing).
"""

import importlib
import os

BACKENDS = {"cython": "._ckernels", "python": "._pykernels"}


def load(name):
    """Import and return the kernel module for backend `name`."""
    if name not in BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}")
    return importlib.import_module(BACKENDS[name], __package__)


def available():
    out = []
    for name in BACKENDS:
        try:
            load(name)
        except ImportError:
            continue
        out.append(name)
    return out


def _select():
    requested = os.environ.get("MICROPOLAR_BACKEND", "auto").lower()
    if requested in BACKENDS:
        return load(requested)
    try:
        return load("cython")
    except ImportError:
        return load("python")


_impl = _select()
BACKEND = _impl.NAME
invariants = _impl.invariants
surface = _impl.surface
