# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: sieves, prime-partition DP, curve point counts.

Mirrors psitwist._kernels_py; selected at import by psitwist._kernels.
"""

import numpy as np

cimport numpy as cnp

BACKEND = "cython"


def spf_table(long long n):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] spf = np.zeros(n + 1, dtype=np.int64)
    cdef long long[:] v = spf
    cdef long long i, j
    if n >= 1:
        v[1] = 1
    i = 2
    while i * i <= n:
        if v[i] == 0:
            j = i * i
            while j <= n:
                if v[j] == 0:
                    v[j] = i
                j += i
        i += 1
    for i in range(2, n + 1):
        if v[i] == 0:
            v[i] = i
    return spf


def sopfr_table(long long n, spf=None):
    if spf is None:
        spf = spf_table(n)
    cdef long long[:] f = spf
    cdef cnp.ndarray[cnp.int64_t, ndim=1] s = np.zeros(n + 1, dtype=np.int64)
    cdef long long[:] v = s
    cdef long long i, m, acc
    for i in range(2, n + 1):
        # spf recursion: S(i) = S(i / spf(i)) + spf(i); i/spf(i) < i is done
        v[i] = v[i // f[i]] + f[i]
    return s


def sopfr_sum(long long n):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] spf = spf_table(n)
    cdef long long[:] f = spf
    cdef cnp.ndarray[cnp.int64_t, ndim=1] s = np.zeros(n + 1, dtype=np.int64)
    cdef long long[:] v = s
    cdef long long i, total = 0
    for i in range(2, n + 1):
        v[i] = v[i // f[i]] + f[i]
        total += v[i]
    return total


def theta_table(long long m, primes):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(m + 1, dtype=np.int64)
    cdef long long[:] c = counts
    cdef long long p, v
    c[0] = 1
    for p in primes:
        if p > m:
            break
        for v in range(p, m + 1):
            c[v] += c[v - p]
    return counts


def curve_point_count(long long a, long long b, long long p):
    cdef long long x, f, y, count = 0
    cdef cnp.ndarray[cnp.npy_bool, ndim=1, cast=True] sq = np.zeros(p, dtype=bool)
    cdef cnp.npy_bool[:] issq = sq
    for y in range(p):
        issq[(y * y) % p] = True
    # cdivision leaves C remainder semantics: force the residues non-negative
    a = (a % p + p) % p
    b = (b % p + p) % p
    for x in range(p):
        f = (((x * x) % p) * x + a * x + b) % p
        if f == 0:
            count += 1
        elif issq[f]:
            count += 2
    return count + 1
