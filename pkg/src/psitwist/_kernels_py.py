"""Pure-python (numpy) kernels: sieves, prime-partition DP, curve point counts.

These are the fallback implementations used when the compiled extension
(psitwist._kernels_cy) is unavailable.  Both backends expose the same
functions with identical results; see benchmarks/bench_kernels.py.
"""

import numpy as np

BACKEND = "python"


def spf_table(n):
    """Smallest-prime-factor table for 0..n (spf[0]=0, spf[1]=1)."""
    spf = np.zeros(n + 1, dtype=np.int64)
    if n >= 1:
        spf[1] = 1
    for i in range(2, int(n**0.5) + 1):
        if spf[i] == 0:
            block = spf[i * i :: i]
            block[block == 0] = i
    unmarked = np.nonzero(spf == 0)[0]
    spf[unmarked] = unmarked
    spf[0] = 0
    return spf


def sopfr_table(n, spf=None):
    """Table of S(i) = sopfr(i) for i = 0..n (S(0) := 0)."""
    if spf is None:
        spf = spf_table(n)
    s = np.zeros(n + 1, dtype=np.int64)
    m = np.arange(n + 1, dtype=np.int64)
    if n >= 1:
        m[0] = 1
    while True:
        active = np.nonzero(m > 1)[0]
        if active.size == 0:
            break
        p = spf[m[active]]
        s[active] += p
        m[active] //= p
    return s


def sopfr_sum(n):
    """Exact sum of S(i) for i = 1..n."""
    return int(sopfr_table(n).sum())


def theta_table(m, primes):
    """Counts of partitions into prime parts for 0..m (coin-change DP)."""
    counts = np.zeros(m + 1, dtype=np.int64)
    counts[0] = 1
    for p in primes:
        if p > m:
            break
        for v in range(p, m + 1):
            counts[v] += counts[v - p]
    return counts


def curve_point_count(a, b, p):
    """|E(F_p)| for y^2 = x^3 + a x + b, via a quadratic-residue table mod p."""
    x = np.arange(p, dtype=np.int64)
    is_square = np.zeros(p, dtype=bool)
    is_square[(x * x) % p] = True
    f = (x * x % p * x + a % p * x + b) % p
    chi = np.where(f == 0, 0, np.where(is_square[f], 1, -1))
    return int(p + 1 + chi.sum())
