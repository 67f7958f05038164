"""Integer logarithm S(n) = sopfr(n), the twist character psi(n) = alpha^S(n),
prime-partition counts, and the Dirichlet-convolution ring.

S is completely additive (S(mn) = S(m) + S(n)), so psi is completely
multiplicative and f -> psi*f is a ring isomorphism for Dirichlet convolution.
The key analytic fact used downstream is the lower bound
S(n) >= (3/log 3) * log n, with equality exactly at powers of 3.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import NotInvertibleError

ISOLATED_FACTOR_LIMIT = 10**12

# growing cache of primes used for trial division
_prime_cache = [2, 3, 5, 7, 11, 13]


def primes_upto(n):
    """List of primes <= n (cached, sieve-backed)."""
    global _prime_cache
    if n > _prime_cache[-1]:
        spf = _kernels.spf_table(max(n, 2 * _prime_cache[-1]))
        idx = np.arange(2, len(spf))
        _prime_cache = [int(p) for p in idx[spf[2:] == idx]]
    # bisect would do; list is small enough that a scan is irrelevant
    import bisect

    return _prime_cache[: bisect.bisect_right(_prime_cache, n)]


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for p in primes_upto(math.isqrt(n)):
        if n % p == 0:
            return False
    return True


def factorize(n):
    """Prime factorisation of n as a list of (p, multiplicity)."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n > ISOLATED_FACTOR_LIMIT:
        raise ValueError(f"isolated factorisation capped at {ISOLATED_FACTOR_LIMIT}")
    out = []
    for p in primes_upto(math.isqrt(n) + 1):
        if p * p > n:
            break
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
    if n > 1:
        out.append((n, 1))
    return out


def sopfr(n):
    """Integer logarithm S(n): sum of prime factors with multiplicity; S(1)=0."""
    return sum(p * k for p, k in factorize(n))


def sopfr_table(n):
    """numpy table of S(0..n) via the smallest-prime-factor sieve."""
    return _kernels.sopfr_table(n)


def sopfr_partial_sum(n):
    """Exact sum of S(i) over i = 1..n.

    The Jakimczyk average order gives sum ~ (pi^2/12) n^2 / log n.
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    return _kernels.sopfr_sum(n)


def sopfr_trend_ratio(n):
    """Ratio of the exact partial sum to its asymptotic (pi^2/12) n^2/log n."""
    return sopfr_partial_sum(n) / (math.pi**2 / 12 * n * n / math.log(n))


@dataclass(frozen=True)
class TwistParameter:
    """Twist base alpha; psi(n) = alpha^S(n)."""

    alpha: complex
    constraint: str = "unit_disk_open"

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        if self.constraint == "unit_disk_open":
            if abs(self.alpha) >= 1:
                raise ValueError("|alpha| < 1 required for unit_disk_open")
        elif self.constraint == "unit_circle_closed":
            if abs(self.alpha) > 1:
                raise ValueError("|alpha| <= 1 required for unit_circle_closed")
        else:
            raise ValueError(f"unknown constraint tag {self.constraint!r}")


def _alpha_of(t):
    return t.alpha if isinstance(t, TwistParameter) else complex(t)


def psi(n, t):
    """The completely multiplicative character psi(n) = alpha^S(n)."""
    alpha = _alpha_of(t)
    s = sopfr(n)
    if alpha == 0:
        return 1.0 + 0j if s == 0 else 0j
    return alpha**s


def psi_values(n_max, t, s_table=None):
    """Vector of psi(1..n_max) (index 0 corresponds to n=1)."""
    alpha = _alpha_of(t)
    if s_table is None:
        s_table = sopfr_table(n_max)
    s = np.asarray(s_table[1 : n_max + 1])
    if alpha == 0:
        out = np.zeros(n_max, dtype=complex)
        out[s == 0] = 1.0
        return out
    return np.power(alpha, s)


# largest m whose prime-partition count still fits in a signed 64-bit counter
THETA_MAX = 1286


def theta_table(m):
    """ϑ(0..m): number of partitions into prime parts. ϑ(0)=1, ϑ(1)=0."""
    if m < 0:
        raise ValueError("m >= 0 required")
    if m > THETA_MAX:
        raise ValueError(f"m <= {THETA_MAX} required (int64 counter range)")
    return _kernels.theta_table(m, primes_upto(max(m, 2)))


def theta(m):
    """Number of multisets of primes summing to m (coin-change DP)."""
    return int(theta_table(m)[m])


def sopfr_preimages(m):
    """All n with S(n) = m, sorted increasing.

    Generated by walking prime partitions of m (largest part first) and
    multiplying the parts; the list has length theta(m).
    """
    if m < 0:
        raise ValueError("m >= 0 required")
    primes = primes_upto(m) if m >= 2 else []
    out = []

    def rec(remaining, max_idx, product):
        if remaining == 0:
            out.append(product)
            return
        for i in range(max_idx, -1, -1):
            p = primes[i]
            if p <= remaining:
                rec(remaining - p, i, product * p)

    rec(m, len(primes) - 1, 1)
    return sorted(out)


class CoefficientArray:
    """Dense arithmetical function on 1..N with Dirichlet-ring operations.

    values[0] corresponds to n=1.  Invertible iff c(1) != 0.
    """

    def __init__(self, values):
        self.values = np.asarray(values, dtype=complex)
        if self.values.ndim != 1 or self.values.size == 0:
            raise ValueError("need a nonempty 1-d coefficient array")

    @classmethod
    def ones(cls, n):
        return cls(np.ones(n, dtype=complex))

    @classmethod
    def delta(cls, n):
        v = np.zeros(n, dtype=complex)
        v[0] = 1.0
        return cls(v)

    @classmethod
    def moebius(cls, n):
        spf = _kernels.spf_table(n)
        mu = np.zeros(n + 1, dtype=np.int64)
        mu[1] = 1
        for i in range(2, n + 1):
            p = spf[i]
            m = i // p
            mu[i] = 0 if m % p == 0 else -mu[m]
        return cls(mu[1:].astype(complex))

    def __len__(self):
        return self.values.size

    def __getitem__(self, n):
        return complex(self.values[n - 1])

    def convolve(self, other):
        """Dirichlet convolution (f*g)(n) = sum_{d|n} f(d) g(n/d)."""
        if len(self) != len(other):
            raise ValueError("equal lengths required")
        n = len(self)
        out = np.zeros(n, dtype=complex)
        f, g = self.values, other.values
        for d in range(1, n + 1):
            fd = f[d - 1]
            if fd == 0:
                continue
            k = n // d
            out[d - 1 :: d] += fd * g[:k]
        return CoefficientArray(out)

    def inverse(self):
        """Dirichlet inverse; requires c(1) != 0."""
        f = self.values
        if f[0] == 0:
            raise NotInvertibleError()
        n = len(self)
        g = np.zeros(n, dtype=complex)
        acc = np.zeros(n, dtype=complex)
        inv1 = 1.0 / f[0]
        for d in range(1, n + 1):
            g[d - 1] = inv1 if d == 1 else -acc[d - 1] * inv1
            k = n // d
            if k >= 2:
                acc[2 * d - 1 :: d] += g[d - 1] * f[1:k]
        return CoefficientArray(g)

    def twist(self, t):
        """Pointwise multiplication by psi(n) = alpha^S(n)."""
        n = len(self)
        return CoefficientArray(self.values * psi_values(n, t))
