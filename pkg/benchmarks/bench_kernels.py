"""Benchmark the hot kernels: numba njit versus the pure-numpy fallback.

Run:
    python3 benchmarks/bench_kernels.py

The same kernels are selected at import time by GRUSHIN_BACKEND; this
script times both implementations directly and checks they agree.
"""

import time

import numpy as np

from grushin._accel import HAS_NUMBA
from grushin import _kernels as K


def bench(fn, args, repeat=3, warmup=1):
    for _ in range(warmup):
        fn(*args)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


CASES = [
    (
        "hermite_columns (degree 800, 4096 points)",
        "hermite_columns",
        (np.linspace(-40.0, 40.0, 4096), 800),
    ),
    (
        "lemma_sweep_d1 (401 points, layers to 2001)",
        "lemma_sweep_d1",
        (np.arange(0.0, 100.25, 0.25), 0.5, 2001),
    ),
    (
        "lemma_sweep_d2 (401 points, layers to 600)",
        "lemma_sweep_d2",
        (
            np.arange(0.0, 100.25, 0.25),
            np.zeros(401),
            np.arange(0.0, 100.25, 0.25),
            0.5,
            600,
        ),
    ),
]


def main():
    print(f"numba available: {HAS_NUMBA}")
    print(f"{'kernel':<45} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for label, name, args in CASES:
        np_fn = K._NUMPY_KERNELS[name]
        t_np, ref = bench(np_fn, args)
        if HAS_NUMBA:
            nb_fn = K._NUMBA_KERNELS[name]
            t_nb, out = bench(nb_fn, args)
            worst = float(np.max(np.abs(np.asarray(out) - np.asarray(ref))))
            scale = float(np.max(np.abs(np.asarray(ref)))) or 1.0
            assert worst <= 1e-12 * scale, f"backend mismatch in {name}: {worst}"
            print(f"{label:<45} {t_np:>9.3f}s {t_nb:>9.3f}s {t_np / t_nb:>8.1f}x")
        else:
            print(f"{label:<45} {t_np:>9.3f}s {'-':>10} {'-':>9}")


if __name__ == "__main__":
    main()
