import math
import random

import numpy as np
import pytest

from psitwist import arith
from psitwist.errors import NotInvertibleError

SOPFR_FIRST_TEN = [0, 2, 3, 4, 5, 5, 7, 6, 6, 7]


def test_sopfr_first_ten():
    assert [arith.sopfr(n) for n in range(1, 11)] == SOPFR_FIRST_TEN


def test_sopfr_twelve():
    assert arith.sopfr(12) == 7  # 2^2 * 3


def test_sopfr_complete_additivity():
    rng = random.Random(7)
    for _ in range(10_000):
        m = rng.randrange(1, 10**4)
        n = rng.randrange(1, max(2, 10**9 // m))
        assert arith.sopfr(m * n) == arith.sopfr(m) + arith.sopfr(n)


def test_sopfr_lower_bound_and_equality_cases():
    n_max = 10**6
    table = np.asarray(arith.sopfr_table(n_max)[1:], dtype=float)
    n = np.arange(1, n_max + 1)
    guide = 3 / math.log(3) * np.log(n)
    assert np.all(table >= guide - 1e-9)
    tight = np.nonzero(table <= guide + 1e-9)[0] + 1
    powers_of_3 = {3**k for k in range(14) if 3**k <= n_max}
    assert set(tight.tolist()) == powers_of_3


@pytest.mark.parametrize("x", [5, 11, 101])
def test_sopfr_restricted_lower_bound(x):
    n_max = 10**6
    spf = arith._kernels.spf_table(n_max)
    table = arith._kernels.sopfr_table(n_max, spf)
    ns = np.nonzero(np.asarray(spf[2:]) >= x)[0] + 2
    guide = x / math.log(x) * np.log(ns)
    assert np.all(np.asarray(table)[ns] >= guide - 1e-9)


def test_psi_values_and_multiplicativity():
    t = arith.TwistParameter(0.5)
    assert arith.psi(1, t) == 1
    assert abs(arith.psi(6, t) - 0.03125) < 1e-15
    rng = random.Random(11)
    for _ in range(200):
        m = rng.randrange(1, 10**4)
        n = rng.randrange(1, 10**4)
        lhs = arith.psi(m * n, t)
        rhs = arith.psi(m, t) * arith.psi(n, t)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_psi_alpha_zero():
    assert arith.psi(1, 0) == 1
    assert arith.psi(2, 0) == 0


def test_twist_parameter_validation():
    with pytest.raises(ValueError):
        arith.TwistParameter(1.2)
    arith.TwistParameter(1.0, constraint="unit_circle_closed")
    with pytest.raises(ValueError):
        arith.TwistParameter(1.2, constraint="unit_circle_closed")
    with pytest.raises(ValueError):
        arith.TwistParameter(0.5, constraint="bogus")


class TestTheta:
    def test_reference_values(self):
        assert arith.theta(7) == 3
        assert [arith.theta(m) for m in (2, 3, 4)] == [1, 1, 1]

    def test_conventions(self):
        assert arith.theta(0) == 1
        assert arith.theta(1) == 0

    def test_ten_by_enumeration(self):
        assert arith.theta(10) == 5

    def test_matches_preimage_count(self):
        for m in range(41):
            assert arith.theta(m) == len(arith.sopfr_preimages(m))

    def test_at_least_two_from_five(self):
        assert all(arith.theta(m) >= 2 for m in range(5, 41))

    def test_rejects_counts_beyond_int64(self):
        with pytest.raises(ValueError):
            arith.theta_table(arith.THETA_MAX + 1)

    def test_largest_supported_size_is_exact(self):
        table = arith.theta_table(arith.THETA_MAX)
        exact = [0] * (arith.THETA_MAX + 1)
        exact[0] = 1
        for p in arith.primes_upto(arith.THETA_MAX):
            for v in range(p, arith.THETA_MAX + 1):
                exact[v] += exact[v - p]
        assert [int(t) for t in table] == exact

    def test_generating_function(self):
        alpha = 0.3
        table = arith.theta_table(120)
        lhs = 1 + sum(int(table[m]) * alpha**m for m in range(2, 121))
        rhs = 1.0
        for p in arith.primes_upto(120):
            rhs /= 1 - alpha**p
        assert abs(lhs - rhs) < 1e-9


class TestPreimages:
    def test_zero(self):
        assert arith.sopfr_preimages(0) == [1]

    def test_seven(self):
        assert arith.sopfr_preimages(7) == [7, 10, 12]

    def test_five(self):
        assert arith.sopfr_preimages(5) == [5, 6]

    def test_values_have_right_sopfr(self):
        for m in (9, 13, 20):
            for n in arith.sopfr_preimages(m):
                assert arith.sopfr(n) == m


class TestDirichletRing:
    def test_delta_is_identity(self):
        rng = np.random.default_rng(3)
        g = arith.CoefficientArray(rng.normal(size=50) + 1j * rng.normal(size=50))
        out = arith.CoefficientArray.delta(50).convolve(g)
        assert np.allclose(out.values, g.values)

    def test_ones_squared_is_divisor_count(self):
        ones = arith.CoefficientArray.ones(6)
        assert np.allclose(ones.convolve(ones).values, [1, 2, 2, 3, 2, 4])

    def test_moebius_inverts_ones(self):
        n = 200
        out = arith.CoefficientArray.moebius(n).convolve(arith.CoefficientArray.ones(n))
        assert np.allclose(out.values, arith.CoefficientArray.delta(n).values)

    def test_inverse_of_ones_is_moebius(self):
        n = 100
        inv = arith.CoefficientArray.ones(n).inverse()
        assert np.allclose(inv.values, arith.CoefficientArray.moebius(n).values)

    def test_inverse_of_delta(self):
        n = 30
        assert np.allclose(
            arith.CoefficientArray.delta(n).inverse().values,
            arith.CoefficientArray.delta(n).values,
        )

    def test_inverse_rejects_zero_leading(self):
        bad = arith.CoefficientArray([0, 1, 2])
        with pytest.raises(NotInvertibleError):
            bad.inverse()

    def test_twist_alpha_one_is_identity(self):
        t = arith.TwistParameter(1.0, constraint="unit_circle_closed")
        f = arith.CoefficientArray(np.arange(1, 31, dtype=complex))
        assert np.allclose(f.twist(t).values, f.values)

    def test_twist_fixes_delta(self):
        d = arith.CoefficientArray.delta(40)
        assert np.allclose(d.twist(0.3).values, d.values)

    def test_twist_is_ring_homomorphism(self):
        n = 500
        rng = np.random.default_rng(17)
        f = arith.CoefficientArray(rng.normal(size=n) + 1j * rng.normal(size=n))
        g = arith.CoefficientArray(rng.normal(size=n) + 1j * rng.normal(size=n))
        alpha = 0.6 + 0.2j
        lhs = f.convolve(g).twist(alpha)
        rhs = f.twist(alpha).convolve(g.twist(alpha))
        assert np.allclose(lhs.values, rhs.values)

    def test_twist_commutes_with_inverse(self):
        n = 200
        alpha = 0.4
        ones = arith.CoefficientArray.ones(n)
        lhs = ones.twist(alpha).inverse()
        rhs = arith.CoefficientArray.moebius(n).twist(alpha)
        assert np.allclose(lhs.values, rhs.values)


class TestPartialSum:
    GOLDEN_1E6 = 64989338772  # frozen from the sieve oracle

    def test_small_values(self):
        assert arith.sopfr_partial_sum(10) == 45
        assert arith.sopfr_partial_sum(2) == 2

    def test_against_direct_sum(self):
        direct = sum(arith.sopfr(i) for i in range(1, 2001))
        assert arith.sopfr_partial_sum(2000) == direct

    def test_golden_million(self):
        assert arith.sopfr_partial_sum(10**6) == self.GOLDEN_1E6

    def test_average_order_ratio(self):
        ratio_large = arith.sopfr_trend_ratio(10**6)
        ratio_small = arith.sopfr_trend_ratio(10**3)
        assert 0.8 <= ratio_large <= 1.3
        assert abs(ratio_large - 1) < abs(ratio_small - 1)
