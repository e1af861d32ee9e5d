"""Time the numba kernels against the pure numpy/itertools fallbacks.

Run:  python benchmarks/bench_kernels.py

Both implementations are imported directly, so the QOTTO_NO_NUMBA flag is
irrelevant here; if numba is not installed the script reports that and
times the fallback alone.
"""

import math
import time

import numpy as np

from qotto import kernels


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def row(name, nb_fn, np_fn):
    t_np = best_of(np_fn)
    if nb_fn is None:
        print(f"{name:42s} numpy {t_np * 1e3:9.3f} ms")
        return
    nb_fn()  # compile outside the timer
    t_nb = best_of(nb_fn)
    print(f"{name:42s} numba {t_nb * 1e3:9.3f} ms   numpy {t_np * 1e3:9.3f} ms"
          f"   speedup {t_np / t_nb:6.1f}x")


def main():
    if not kernels.USING_NUMBA:
        print("numba not active; timing the numpy fallback only")
    rng = np.random.default_rng(42)

    for size in (10_000, 1_000_000):
        w = np.sort(rng.uniform(0.0, 50.0, size=size))
        row(f"log_z_and_mean, {size} states",
            (lambda: kernels._log_z_and_mean_nb(w, 0.7)) if kernels.USING_NUMBA else None,
            lambda: kernels._log_z_and_mean_np(w, 0.7))
        row(f"gibbs_weights, {size} states",
            (lambda: kernels._gibbs_weights_nb(w, 0.7)) if kernels.USING_NUMBA else None,
            lambda: kernels._gibbs_weights_np(w, 0.7))

    for n, m in ((150, 2), (60, 4), (40, 5)):
        w1 = np.arange(1, n + 1, dtype=np.float64) ** 2
        count = math.comb(n + m - 1, m)
        row(f"multiset_sums, N={n} M={m} ({count} states)",
            (lambda: kernels._multiset_sums_nb(w1, m, count)) if kernels.USING_NUMBA else None,
            lambda: kernels._multiset_sums_np(w1, m, count))
        count_f = math.comb(n, m)
        row(f"subset_sums,   N={n} M={m} ({count_f} states)",
            (lambda: kernels._subset_sums_nb(w1, m, count_f)) if kernels.USING_NUMBA else None,
            lambda: kernels._subset_sums_np(w1, m, count_f))


if __name__ == "__main__":
    main()
