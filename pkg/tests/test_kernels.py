"""Backend parity: the compiled kernels must agree with the pure-Python ones."""

import random

import numpy as np
import pytest

from psitwist import _kernels, _kernels_py
from psitwist.arith import primes_upto

cython_kernels = pytest.importorskip(
    "psitwist._kernels_cy", reason="compiled extension not built"
)

BACKENDS = [_kernels_py, cython_kernels]


def test_active_backend_label():
    assert _kernels.BACKEND in ("cython", "python")


def test_spf_tables_agree():
    for n in (1, 2, 10, 1000, 10**5):
        a = np.asarray(_kernels_py.spf_table(n))
        b = np.asarray(cython_kernels.spf_table(n))
        assert np.array_equal(a, b), n


def test_sopfr_tables_agree():
    for n in (1, 2, 10, 1000, 10**5):
        spf_a = _kernels_py.spf_table(n)
        spf_b = cython_kernels.spf_table(n)
        a = np.asarray(_kernels_py.sopfr_table(n, spf_a))
        b = np.asarray(cython_kernels.sopfr_table(n, spf_b))
        assert np.array_equal(a, b), n


def test_sopfr_sums_agree():
    for n in (1, 10, 5000, 10**5):
        assert _kernels_py.sopfr_sum(n) == cython_kernels.sopfr_sum(n)


def test_theta_tables_agree():
    primes = primes_upto(200)
    a = np.asarray(_kernels_py.theta_table(200, primes))
    b = np.asarray(cython_kernels.theta_table(200, primes))
    assert np.array_equal(a, b)


def test_point_counts_agree():
    rng = random.Random(31)
    ps = [p for p in primes_upto(500) if p > 2]
    for _ in range(50):
        p = rng.choice(ps)
        a_coef = rng.randrange(-10, 11)
        b_coef = rng.randrange(-10, 11)
        if (4 * a_coef**3 + 27 * b_coef**2) % p == 0:
            continue
        lhs = _kernels_py.curve_point_count(a_coef, b_coef, p)
        rhs = cython_kernels.curve_point_count(a_coef, b_coef, p)
        assert lhs == rhs, (a_coef, b_coef, p)
