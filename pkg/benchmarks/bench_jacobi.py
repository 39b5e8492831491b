"""Jacobi eigensolver: numba kernel versus the pure-numpy fallback.

    python3 benchmarks/bench_jacobi.py --sizes 8,16,32,64 --repeat 3
"""
import argparse
import time

import numpy as np

from an_lab.numeric.linalg import sym_eigen
from an_lab.numeric.suites import DEFAULT_SEED, random_complex_matrix


def best_time(a, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        w = sym_eigen(a, backend=backend).values
        best = min(best, time.perf_counter() - t0)
    return best, w


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="8,16,32,64,128")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = p.parse_args()
    rng = np.random.default_rng(args.seed)

    # compile outside the timed region
    warm = np.eye(2, dtype=np.complex128)
    t0 = time.perf_counter()
    sym_eigen(warm + 0.5 * np.fliplr(warm), backend="numba")
    print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.3f}s")

    print(f"{'n':>5} {'numpy [s]':>12} {'numba [s]':>12} {'speedup':>8} {'max |dw|':>10}")
    for n in (int(s) for s in args.sizes.split(",")):
        a = random_complex_matrix(rng, n)
        a = a + a.conj().T
        t_np, w_np = best_time(a, "numpy", args.repeat)
        t_nb, w_nb = best_time(a, "numba", args.repeat)
        dw = float(np.max(np.abs(w_np - w_nb)))
        print(f"{n:>5} {t_np:>12.4f} {t_nb:>12.4f} {t_np / t_nb:>8.1f} {dw:>10.1e}")


if __name__ == "__main__":
    main()
