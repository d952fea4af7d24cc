"""Time the compiled kernels against their numpy counterparts.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--panels P]

Compilation happens once before timing. Without numba only the numpy
rows are printed.
"""

import argparse
import timeit

import numpy as np

from spingp import kernels
from spingp._accel import HAVE_NUMBA
from spingp.model import ModelParams, build_h


def _inputs(panels):
    h = build_h(ModelParams(1.0, -0.3, 0.8))
    w, v = kernels.eigh_numpy(h)
    rng = np.random.default_rng(0)
    psi = rng.normal(size=6) + 1j * rng.normal(size=6)
    psi /= np.linalg.norm(psi)
    return h, w, v, psi, 2 * np.pi, panels


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=2000)
    ap.add_argument("--panels", type=int, default=1024)
    args = ap.parse_args(argv)

    h, w, v, psi, T, panels = _inputs(args.panels)
    cases = {
        "eigh numpy": lambda: kernels.eigh_numpy(h),
        "energy numpy": lambda: kernels.energy_integral_numpy(w, v, psi, h, T, panels),
    }
    if HAVE_NUMBA:
        kernels.jacobi_eigh_jit(h)
        kernels.energy_integral_jit(w, v, psi, h, T, panels)
        cases["eigh numba"] = lambda: kernels.jacobi_eigh_jit(h)
        cases["energy numba"] = lambda: kernels.energy_integral_jit(w, v, psi, h, T, panels)

    print(f"{'kernel':<14} {'us/call':>10}")
    for name in sorted(cases):
        t = timeit.timeit(cases[name], number=args.repeat) / args.repeat
        print(f"{name:<14} {t * 1e6:>10.2f}")


if __name__ == "__main__":
    main()
