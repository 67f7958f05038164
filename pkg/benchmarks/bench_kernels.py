#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--n 1000000] [--repeat 3]
"""

import argparse
import time

from psitwist import _kernels_py
from psitwist.arith import primes_upto

try:
    from psitwist import _kernels_cy
except ImportError:
    _kernels_cy = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=10**6)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    n = args.n
    theta_m = 1286  # largest size whose counts fit in the int64 DP table
    primes = primes_upto(theta_m)
    cases = [
        ("spf_table", lambda k: k.spf_table(n)),
        ("sopfr_table", lambda k: k.sopfr_table(n)),
        ("sopfr_sum", lambda k: k.sopfr_sum(n)),
        ("theta_table", lambda k: k.theta_table(theta_m, primes)),
        ("curve_point_count", lambda k: k.curve_point_count(-1, 0, 99991)),
    ]

    print(f"n = {n}, best of {args.repeat}")
    header = f"{'kernel':<20}{'python':>12}"
    if _kernels_cy is not None:
        header += f"{'cython':>12}{'speedup':>10}"
    print(header)
    for name, call in cases:
        t_py = best_of(lambda: call(_kernels_py), args.repeat)
        line = f"{name:<20}{t_py * 1e3:>10.2f}ms"
        if _kernels_cy is not None:
            t_cy = best_of(lambda: call(_kernels_cy), args.repeat)
            line += f"{t_cy * 1e3:>10.2f}ms{t_py / t_cy:>9.1f}x"
        print(line)
    if _kernels_cy is None:
        print("(compiled extension not available; showing fallback only)")


if __name__ == "__main__":
    main()
