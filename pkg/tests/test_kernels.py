import os
import subprocess
import sys

import numpy as np
import pytest

from micropolar import kernels
from micropolar.criterion import PRESETS, preset
from micropolar.verification import random_cosserat_state, relative_error

BACKENDS = kernels.available()


class TestSelection:
    def test_python_always_available(self):
        assert "python" in BACKENDS

    def test_unknown(self):
        with pytest.raises(ValueError):
            kernels.load("fortran")

    @pytest.mark.parametrize("name", BACKENDS)
    def test_environment_override(self, name):
        code = "from micropolar import kernels; print(kernels.BACKEND)"
        env = dict(os.environ, MICROPOLAR_BACKEND=name)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        assert out.stdout.strip() == name

    def test_default_prefers_compiled(self):
        if "cython" in BACKENDS and os.environ.get("MICROPOLAR_BACKEND", "auto") == "auto":
            assert kernels.BACKEND == "cython"


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")
class TestParity:
    @pytest.mark.parametrize("name", PRESETS)
    def test_agreement(self, mat, rng, name):
        import math

        a, b = kernels.load("cython"), kernels.load("python")
        sh = preset(name, math.radians(25.0) if name not in ("von-mises", "tresca") else None, eps_round=1e-6)
        for _ in range(20):
            sig, mu = random_cosserat_state(rng, mat, 10.0)
            ia, ib = a.invariants(sig, mu, mat.moduli), b.invariants(sig, mu, mat.moduli)
            np.testing.assert_allclose(ia, ib, rtol=1e-13, atol=1e-13)
            sa, sb = a.surface(sig, mu, mat.moduli, sh.params), b.surface(sig, mu, mat.moduli, sh.params)
            assert sa[0] == pytest.approx(sb[0], rel=1e-13, abs=1e-13)
            assert relative_error(sa[1], sb[1]) < 1e-12
            assert relative_error(sa[2], sb[2]) < 1e-12

    def test_hydrostatic(self, mat):
        a, b = kernels.load("cython"), kernels.load("python")
        sig = -3.0 * np.eye(3)
        assert a.invariants(sig, np.zeros((3, 3)), mat.moduli) == pytest.approx(b.invariants(sig, np.zeros((3, 3)), mat.moduli))
