"""Time the compiled kernels against their pure-numpy originals.

Run with ``python benchmarks/bench_kernels.py``.  Each kernel is called once
to trigger compilation, then timed with :mod:`timeit` in both modes.  With
``TRIREP_DISABLE_NUMBA=1`` both columns use the uncompiled path.
"""

import argparse
import timeit

import numpy as np

from trirep import _kernels
from trirep._accel import backend
from trirep.orthopoly import jacobi_coeffs


def workloads(size):
    rng = np.random.default_rng(7)
    p, q, s = jacobi_coeffs(size, 1.0, 1.5)
    t = np.linspace(-1, 1, 64)
    a = rng.normal(size=size)
    b = 0.5 + rng.random(size)
    g = np.linspace(-2.0, 30.0, 50 * size)
    u = np.sin(np.linspace(0, 40, 50 * size))
    return {
        "three_term": (_kernels.three_term, (p, q, s, t)),
        "three_term_all": (_kernels.three_term_all, (p, q, s, t)),
        "forward_recursion": (_kernels.forward_recursion, (a, b, 0.3, size)),
        "numerov": (_kernels.numerov, (g, 1e-3, 0.0, 1e-6)),
        "count_nodes": (_kernels.count_nodes, (u, 0, u.size)),
    }


def best_of(fn, args, repeat, number):
    return min(timeit.repeat(lambda: fn(*args), repeat=repeat, number=number)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=400, help="recursion length; grids are 50x this")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=20)
    args = ap.parse_args(argv)

    print(f"backend: {backend()}")
    print(f"{'kernel':20s} {'compiled [us]':>14s} {'python [us]':>12s} {'speedup':>8s}")
    for name, (fn, fargs) in workloads(args.size).items():
        fn(*fargs)  # compile
        fast = best_of(fn, fargs, args.repeat, args.number)
        slow = best_of(fn.py_func, fargs, args.repeat, max(1, args.number // 10))
        print(f"{name:20s} {fast * 1e6:14.1f} {slow * 1e6:12.1f} {slow / fast:8.1f}")


if __name__ == "__main__":
    main()
