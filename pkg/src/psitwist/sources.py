"""Coefficient providers for the supported L-function families: Riemann zeta,
Dirichlet characters, newforms, and elliptic curves.

Every source exposes multiplicative coefficients c(n) with c(1)=1, a degree d,
a motivic weight w (w = k-1 for a weight-k newform), the set of bad primes and
the local Euler polynomial P_p(T) at every prime.  At good primes the inverse
roots of P_p have absolute value p^(w/2).
"""

import cmath
import math
import os
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .arith import factorize, is_prime, primes_upto
from .errors import (
    BadReductionError,
    MissingCoefficientError,
    PrimeBoundError,
)

POINT_COUNT_LIMIT = 10**5


@dataclass(frozen=True)
class EulerFactor:
    """Local polynomial P_p(T) = prod_i (1 - c_{p,i} T), a_0 = 1."""

    prime: int
    coeffs: tuple
    inverse_roots: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, t):
        value = 0j
        for a in reversed(self.coeffs):
            value = value * t + a
        return value


class DirichletCharacter:
    """Character mod q given by its value table on residues.

    The table is validated on construction: chi(1)=1, chi vanishes exactly off
    the units, chi(ab) = chi(a)chi(b), and nonzero values are roots of unity.
    """

    def __init__(self, modulus, values):
        q = int(modulus)
        if q < 1:
            raise ValueError("modulus >= 1 required")
        table = [complex(v) for v in values]
        if len(table) != q:
            raise ValueError(f"value table must have length {q} (residues 1..q)")
        # store by residue class n mod q: index r holds chi(r), chi(0)=chi(q)
        self.modulus = q
        self._table = [table[q - 1]] + table[: q - 1]
        self._validate()

    def _validate(self):
        q = self.modulus
        if q == 1:
            if abs(self._table[0] - 1) > 1e-12:
                raise ValueError("character mod 1 must be constant 1")
            return
        if abs(self(1) - 1) > 1e-12:
            raise ValueError("chi(1) must equal 1")
        for r in range(q):
            unit = math.gcd(r, q) == 1
            v = self._table[r]
            if unit:
                if abs(v) < 1e-12:
                    raise ValueError(f"chi({r}) must be nonzero on units")
                if abs(abs(v) - 1) > 1e-10:
                    raise ValueError(f"chi({r}) must lie on the unit circle")
            elif abs(v) > 1e-12:
                raise ValueError(f"chi({r}) must vanish off the units")
        for a in range(1, q + 1):
            if math.gcd(a, q) != 1:
                continue
            for b in range(a, q + 1):
                if math.gcd(b, q) != 1:
                    continue
                if abs(self(a * b) - self(a) * self(b)) > 1e-10:
                    raise ValueError(f"multiplicativity fails at ({a},{b})")

    def __call__(self, n):
        return self._table[n % self.modulus]

    @classmethod
    def trivial(cls, modulus=1):
        q = int(modulus)
        return cls(q, [1 if math.gcd(r, q) == 1 else 0 for r in range(1, q + 1)])

    @classmethod
    def quadratic_mod4(cls):
        """The nontrivial character mod 4: 1, 0, -1, 0."""
        return cls(4, [1, 0, -1, 0])

    @classmethod
    def from_file(cls, path):
        """Load from lines "r re [im]" for residues r = 1..q."""
        entries = {}
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                r = int(parts[0])
                re = float(parts[1])
                im = float(parts[2]) if len(parts) > 2 else 0.0
                entries[r] = complex(re, im)
        q = max(entries)
        return cls(q, [entries.get(r, 0.0) for r in range(1, q + 1)])

    def order(self):
        """Smallest m >= 1 with chi^m trivial."""
        q = self.modulus
        m = 1
        while True:
            if all(
                abs(self(a) ** m - 1) < 1e-8
                for a in range(1, q + 1)
                if math.gcd(a, q) == 1
            ):
                return m
            m += 1
            if m > 2 * q:
                raise ValueError("could not determine character order")


@dataclass(frozen=True)
class EllipticCurve:
    """Short Weierstrass curve y^2 = x^3 + a x + b over Q."""

    a: int
    b: int

    @property
    def discriminant(self):
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError("singular curve: discriminant is zero")


def count_points(curve, p):
    """|E(F_p)| including the point at infinity, via residue symbols mod p."""
    if p == 2:
        raise BadReductionError("not supported by the residue-symbol method")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if curve.discriminant % p == 0:
        raise BadReductionError()
    if p > POINT_COUNT_LIMIT:
        raise PrimeBoundError()
    return _kernels.curve_point_count(curve.a, curve.b, p)


class CoefficientSource:
    """Base class: multiplicative coefficients plus local Euler data."""

    kind = None
    degree = None
    weight = None
    bad_primes = frozenset()

    def coeff_prime(self, p):
        raise NotImplementedError

    def coeff_prime_power(self, p, m):
        raise NotImplementedError

    def coeff(self, n):
        """c(n), assembled from prime powers by multiplicativity."""
        if n == 1:
            return 1 + 0j
        value = 1 + 0j
        for p, k in factorize(n):
            value *= self.coeff_prime_power(p, k)
        return value

    def coeff_block(self, n_max, spf=None):
        """Vector of c(1..n_max) (index 0 is n=1)."""
        if spf is None:
            spf = _kernels.spf_table(n_max)
        out = np.empty(n_max + 1, dtype=complex)
        out[1] = 1.0
        ppow_cache = {}
        for n in range(2, n_max + 1):
            p = int(spf[n])
            m, k = n, 0
            while m % p == 0:
                m //= p
                k += 1
            key = (p, k)
            cp = ppow_cache.get(key)
            if cp is None:
                cp = self.coeff_prime_power(p, k)
                ppow_cache[key] = cp
            out[n] = cp * out[m]
        return out[1:]

    def is_good(self, p):
        return p not in self.bad_primes

    def local_factor(self, p):
        raise NotImplementedError


class ZetaSource(CoefficientSource):
    kind = "zeta"
    degree = 1
    weight = 0

    def coeff_prime(self, p):
        return 1 + 0j

    def coeff_prime_power(self, p, m):
        return 1 + 0j

    def coeff(self, n):
        return 1 + 0j

    def coeff_block(self, n_max, spf=None):
        return np.ones(n_max, dtype=complex)

    def local_factor(self, p):
        return EulerFactor(p, (1 + 0j, -1 + 0j), (1 + 0j,))


class CharacterSource(CoefficientSource):
    kind = "dirichlet_char"
    degree = 1
    weight = 0

    def __init__(self, chi):
        self.chi = chi
        self.bad_primes = frozenset(
            p for p, _ in factorize(chi.modulus) if chi.modulus > 1
        )

    def coeff_prime(self, p):
        return self.chi(p)

    def coeff_prime_power(self, p, m):
        return self.chi(p) ** m

    def coeff(self, n):
        return self.chi(n)

    def coeff_block(self, n_max, spf=None):
        n = np.arange(1, n_max + 1)
        table = np.array([self.chi(r) for r in range(self.chi.modulus)])
        return table[n % self.chi.modulus]

    def local_factor(self, p):
        v = self.chi(p)
        if abs(v) < 1e-12:
            return EulerFactor(p, (1 + 0j,), ())
        return EulerFactor(p, (1 + 0j, -v), (v,))


class NewformSource(CoefficientSource):
    """Hecke eigenform of weight k, level N, nebentypus chi.

    Prime coefficients come from a user-supplied a_p table; prime powers follow
    the Hecke recursion c(p^{m+1}) = c(p)c(p^m) - chi(p) p^{k-1} c(p^{m-1})
    at good primes and c(p^m) = c(p)^m at p | N.
    """

    kind = "newform"
    degree = 2

    def __init__(self, weight_k, level, nebentypus, ap_table):
        if weight_k < 2:
            raise ValueError("weight k >= 2 required")
        self.k = int(weight_k)
        self.level = int(level)
        self.weight = self.k - 1
        self.chi = nebentypus
        self.ap = {int(p): complex(v) for p, v in ap_table.items()}
        self.bad_primes = frozenset(p for p, _ in factorize(self.level))
        self._ppow = {}

    def _chi_good(self, p):
        # nebentypus value at a good prime; 0 at p | N by convention
        return 0j if p in self.bad_primes else self.chi(p)

    def coeff_prime(self, p):
        try:
            return self.ap[p]
        except KeyError:
            raise MissingCoefficientError(f"missing coefficient at p={p}") from None

    def coeff_prime_power(self, p, m):
        key = (p, m)
        if key in self._ppow:
            return self._ppow[key]
        ap = self.coeff_prime(p)
        if p in self.bad_primes:
            value = ap**m
        else:
            chi_p = self._chi_good(p)
            c_prev, c_cur = 1 + 0j, ap
            for _ in range(m - 1):
                c_prev, c_cur = c_cur, ap * c_cur - chi_p * p ** (self.k - 1) * c_prev
            value = c_cur
        self._ppow[key] = value
        return value

    def local_factor(self, p):
        ap = self.coeff_prime(p)
        if p in self.bad_primes:
            if ap == 0:
                return EulerFactor(p, (1 + 0j,), ())
            return EulerFactor(p, (1 + 0j, -ap), (ap,))
        chi_p = self._chi_good(p)
        c2 = chi_p * p ** (self.k - 1)
        # inverse roots solve z^2 - ap z + c2 = 0
        disc = cmath.sqrt(ap * ap - 4 * c2)
        r1 = (ap + disc) / 2
        r2 = (ap - disc) / 2
        return EulerFactor(p, (1 + 0j, -ap, c2), (r1, r2))

    @classmethod
    def from_file(cls, weight_k, level, nebentypus, path):
        """Load an a_p table from lines "p re [im]"."""
        table = {}
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                p = int(parts[0])
                re = float(parts[1])
                im = float(parts[2]) if len(parts) > 2 else 0.0
                table[p] = complex(re, im)
        return cls(weight_k, level, nebentypus, table)


class EllipticSource(NewformSource):
    """Weight-2 newform attached to an elliptic curve.

    Good a_p come from point counting (p <= prime_bound); bad a_p are supplied
    by the caller and must be 0, 1 or -1.
    """

    kind = "elliptic_curve"

    def __init__(self, curve, conductor_primes, bad_coeffs, prime_bound):
        bad_coeffs = {int(p): int(v) for p, v in bad_coeffs.items()}
        conductor_primes = frozenset(int(p) for p in conductor_primes)
        for p in bad_coeffs:
            if p not in conductor_primes:
                raise ValueError(f"bad coefficient at p={p} outside the conductor")
        for p, v in bad_coeffs.items():
            if v not in (-1, 0, 1):
                raise ValueError("bad-prime coefficients must be 0, 1 or -1")
        if prime_bound > POINT_COUNT_LIMIT:
            raise PrimeBoundError()
        level = 1
        for p in sorted(conductor_primes):
            level *= p
        super().__init__(2, level, DirichletCharacter.trivial(1), dict(bad_coeffs))
        self.bad_primes = conductor_primes
        self.curve = curve
        self.prime_bound = int(prime_bound)

    def _chi_good(self, p):
        return 0j if p in self.bad_primes else 1 + 0j

    def coeff_prime(self, p):
        if p in self.ap:
            return self.ap[p]
        if p in self.bad_primes:
            raise MissingCoefficientError(f"missing coefficient at p={p}")
        if p > self.prime_bound:
            raise PrimeBoundError()
        ap = complex(p + 1 - count_points(self.curve, p))
        self.ap[p] = ap
        return ap


def zeta_source():
    return ZetaSource()


def character_source(chi):
    if chi.modulus == 1:
        return zeta_source()
    return CharacterSource(chi)


def newform_source(weight_k, level, nebentypus, ap_table):
    return NewformSource(weight_k, level, nebentypus, ap_table)


def elliptic_source(curve, conductor_primes, bad_coeffs, prime_bound=POINT_COUNT_LIMIT):
    return EllipticSource(curve, conductor_primes, bad_coeffs, prime_bound)


def data_path(name):
    """Resolve a coefficient file against PSITWIST_DATA_DIR."""
    base = os.environ.get("PSITWIST_DATA_DIR")
    if base and not os.path.isabs(name):
        candidate = os.path.join(base, name)
        if os.path.exists(candidate):
            return candidate
    return name
