"""Compare the compiled and pure-Python kernels.

Two measurements:

* micro: time per call of ``invariants`` and ``surface`` on random states,
* end-to-end: wall time of a 200-step Mohr-Coulomb path, run in a fresh
  interpreter per backend (``MICROPOLAR_BACKEND`` is read at import).

Usage::

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from micropolar import kernels
from micropolar.checks import REFERENCE_MATERIAL
from micropolar.criterion import preset

END_TO_END = """
import math, time
import numpy as np
from micropolar import kernels
from micropolar.checks import REFERENCE_MATERIAL, proportional_path
from micropolar.criterion import GCCriterion, HardeningLaw, preset
from micropolar.integrator import MaterialState, integrate_path
phi = math.radians(30.0)
cr = GCCriterion.associated(preset("mohr-coulomb", phi, eps_round=1e-6), HardeningLaw(10.0, 5.0, 3.0, phi))
t = time.perf_counter()
integrate_path(REFERENCE_MATERIAL, cr, MaterialState(), proportional_path(0.05, 0.02, 200))
print(kernels.BACKEND, time.perf_counter() - t)
"""


def micro(repeat):
    rng = np.random.default_rng(0)
    mat = REFERENCE_MATERIAL
    shape = preset("mohr-coulomb", 0.5, eps_round=1e-6).params
    states = [(rng.normal(size=(3, 3)) * 10.0, rng.normal(size=(3, 3)) * 0.1) for _ in range(100)]
    rows = []
    for name in kernels.available():
        mod = kernels.load(name)

        def inv():
            for s, m in states:
                mod.invariants(s, m, mat.moduli)

        def surf():
            for s, m in states:
                mod.surface(s, m, mat.moduli, shape)

        t_inv = min(timeit.repeat(inv, number=1, repeat=repeat)) / len(states)
        t_surf = min(timeit.repeat(surf, number=1, repeat=repeat)) / len(states)
        rows.append((name, t_inv, t_surf))
    return rows


def end_to_end():
    out = []
    for name in kernels.available():
        env = dict(os.environ, MICROPOLAR_BACKEND=name)
        res = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        backend, seconds = res.stdout.split()
        out.append((backend, float(seconds)))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rows = micro(args.repeat)
    print(f"{'backend':<8} {'invariants [us]':>16} {'surface [us]':>14}")
    for name, a, b in rows:
        print(f"{name:<8} {a * 1e6:16.2f} {b * 1e6:14.2f}")
    if len(rows) == 2:
        (_, a0, b0), (_, a1, b1) = rows
        print(f"speed-up python/cython: invariants {a1 / a0:.1f}x, surface {b1 / b0:.1f}x")
    print()
    e2e = end_to_end()
    print(f"{'backend':<8} {'200-step path [s]':>18}")
    for name, s in e2e:
        print(f"{name:<8} {s:18.3f}")
    if len(e2e) == 2:
        print(f"speed-up python/cython: {e2e[1][1] / e2e[0][1]:.1f}x")


if __name__ == "__main__":
    main()
