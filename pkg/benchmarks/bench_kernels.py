"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]
"""

import argparse
import sys
import timeit

import numpy as np

from effham._backend import AVAILABLE


def svd_workload(rng, count, n):
    mats = np.sqrt(rng.uniform(size=(count, n, n))) * np.exp(2j * np.pi * rng.uniform(size=(count, n, n)))

    def run(kernels):
        for m in mats:
            kernels.jacobi_singular_values(m)

    return run


def rk4_workload(rng, nsteps, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    herm = a + a.conj().T
    t = np.linspace(0.0, 1.0, 2 * nsteps + 1)
    hs = herm[None] * np.cos(t)[:, None, None]
    psi0 = np.eye(n, dtype=complex)[0]
    h = 1.0 / nsteps

    def run(kernels):
        kernels.rk4_sweep(hs, psi0, h, True)

    return run


def agreement(rng):
    """Max difference between backends on one SVD batch and one RK4 sweep."""
    if len(AVAILABLE) < 2:
        return None
    py, cc = AVAILABLE["python"], AVAILABLE["compiled"]
    worst = 0.0
    for _ in range(50):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        worst = max(worst, np.max(np.abs(py.jacobi_singular_values(m)[0] - cc.jacobi_singular_values(m)[0])))
    hs = np.repeat((m + m.conj().T)[None], 201, axis=0)
    psi0 = np.array([1, 0, 0, 0], dtype=complex)
    worst = max(worst, np.max(np.abs(py.rk4_sweep(hs, psi0, 0.01)[0] - cc.rk4_sweep(hs, psi0, 0.01)[0])))
    return worst


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    workloads = [
        ("jacobi svd, 2000 x (4x4)", svd_workload(rng, 2000, 4)),
        ("jacobi svd, 200 x (16x16)", svd_workload(rng, 200, 16)),
        ("rk4 sweep, 20000 steps, N=2", rk4_workload(rng, 20000, 2)),
        ("rk4 sweep, 5000 steps, N=8", rk4_workload(rng, 5000, 8)),
    ]
    names = sorted(AVAILABLE)
    print(f"backends: {', '.join(names)}  (best of {args.repeat})")
    print(f"{'workload':32s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, run in workloads:
        best = {n: min(timeit.repeat(lambda: run(AVAILABLE[n]), number=1, repeat=args.repeat)) for n in names}
        row = f"{label:32s}" + "".join(f"{best[n] * 1e3:10.1f}ms" for n in names)
        if len(names) > 1:
            row += f"{best['python'] / best['compiled']:11.1f}x"
        print(row)
    diff = agreement(rng)
    if diff is not None:
        print(f"max backend disagreement: {diff:.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
