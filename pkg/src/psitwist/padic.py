"""Fixed-precision p-adic arithmetic and the twisted p-adic Dirichlet series.

Computations run modulo p^(K+g) where K is the requested precision and g a
guard reserve absorbing the digit loss from divisions in log/exp/binomial
series; reported residues are trusted modulo p^K.  For a twist alpha with
v_p(alpha) = j >= 1 the twisted series is a *finite* exact sum modulo
p^(K+g): every term with j*S(n) >= K+g vanishes, so series, Euler product
and Mahler expansion all produce the same exact residue.
"""

import math
from fractions import Fraction
from functools import lru_cache

from .arith import factorize, is_prime, primes_upto, sopfr, sopfr_preimages
from .errors import (
    ContractionError,
    EmbeddingError,
    InsufficientPrimeBoundError,
    LogDomainError,
    NotInvertibleError,
)


class PadicContext:
    """Odd prime p, reported precision K, guard digits g (default K//2 + 8)."""

    def __init__(self, p, precision, guard=None):
        if p < 3 or not is_prime(p):
            raise ValueError("p must be an odd prime")
        if precision < 2:
            raise ValueError("precision K >= 2 required")
        self.p = int(p)
        self.precision = int(precision)
        self.guard = int(guard) if guard is not None else self.precision // 2 + 8
        self.modulus = self.p ** (self.precision + self.guard)
        self.report_modulus = self.p**self.precision

    def __repr__(self):
        return f"PadicContext(p={self.p}, K={self.precision}, g={self.guard})"

    def scalar(self, value):
        """Lift an integer or a Fraction with unit denominator into Z_p."""
        if isinstance(value, PadicScalar):
            if value.ctx is not self:
                raise ValueError("scalar from a different context")
            return value
        if isinstance(value, Fraction):
            den = value.denominator
            if den % self.p == 0:
                raise NotInvertibleError("denominator is divisible by p")
            r = value.numerator * pow(den, -1, self.modulus)
            return PadicScalar(self, r)
        return PadicScalar(self, int(value))

    def teichmuller(self, a):
        return teichmuller(self, a)

    def angle(self, a):
        return angle(self, a)


class PadicScalar:
    """Residue modulo p^(K+g); trusted modulo p^K."""

    __slots__ = ("ctx", "residue")

    def __init__(self, ctx, residue):
        self.ctx = ctx
        self.residue = residue % ctx.modulus

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            if other.ctx is not self.ctx:
                raise ValueError("mixed p-adic contexts")
            return other
        return self.ctx.scalar(other)

    def __add__(self, other):
        return PadicScalar(self.ctx, self.residue + self._coerce(other).residue)

    __radd__ = __add__

    def __sub__(self, other):
        return PadicScalar(self.ctx, self.residue - self._coerce(other).residue)

    def __rsub__(self, other):
        return PadicScalar(self.ctx, self._coerce(other).residue - self.residue)

    def __mul__(self, other):
        return PadicScalar(self.ctx, self.residue * self._coerce(other).residue)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicScalar(self.ctx, -self.residue)

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        return PadicScalar(self.ctx, pow(self.residue, n, self.ctx.modulus))

    def inverse(self):
        if self.residue % self.ctx.p == 0:
            raise NotInvertibleError()
        return PadicScalar(self.ctx, pow(self.residue, -1, self.ctx.modulus))

    def valuation(self):
        """v_p of the residue, capped at K+g (the valuation of 0 mod p^(K+g))."""
        if self.residue == 0:
            return self.ctx.precision + self.ctx.guard
        v, r = 0, self.residue
        while r % self.ctx.p == 0:
            r //= self.ctx.p
            v += 1
        return v

    def reduced(self):
        """Residue modulo p^K: the guaranteed digits."""
        return self.residue % self.ctx.report_modulus

    def same(self, other):
        """Equality of the trusted residues mod p^K."""
        return self.reduced() == self._coerce(other).reduced()

    def __repr__(self):
        c = self.ctx
        return f"{c.p}^{c.precision} : {self.reduced()}"


def _div_exact(ctx, residue, n):
    """residue / n for integer n = p^e * m: exact shift by p^e, unit division.

    Valid when the represented value is divisible by p^e; costs e guard digits.
    """
    e = 0
    while n % ctx.p == 0:
        n //= ctx.p
        e += 1
    r = residue % ctx.modulus
    if r % ctx.p**e != 0:
        raise ValueError("inexact division by a power of p")
    r //= ctx.p**e
    return r * pow(n, -1, ctx.modulus) % ctx.modulus


def teichmuller(ctx, a):
    """The (p-1)-th root of unity congruent to a mod p, by Frobenius iteration."""
    a = ctx.scalar(a)
    if a.residue % ctx.p == 0:
        raise NotInvertibleError("p divides a")
    x = a.residue
    for _ in range(ctx.precision + ctx.guard + 2):
        nxt = pow(x, ctx.p, ctx.modulus)
        if nxt == x:
            return PadicScalar(ctx, x)
        x = nxt
    raise AssertionError("Teichmuller iteration failed to stabilise")


def angle(ctx, a):
    """The 1-unit part <a> = a / omega(a); satisfies <a> = 1 mod p."""
    u = ctx.scalar(a) * teichmuller(ctx, a).inverse()
    assert u.residue % ctx.p == 1 % ctx.p
    return u


def plog(ctx, u):
    """p-adic logarithm on 1 + pZ_p."""
    u = ctx.scalar(u)
    if u.residue % ctx.p != 1:
        raise LogDomainError()
    t = (u.residue - 1) % ctx.modulus
    total = 0
    power = 1
    kg = ctx.precision + ctx.guard
    n = 1
    while n <= kg + _base_log_floor(ctx.p, kg) + 1:
        power = power * t % ctx.modulus
        term = _div_exact(ctx, power, n)
        total = (total - term if n % 2 == 0 else total + term) % ctx.modulus
        n += 1
    return PadicScalar(ctx, total)


def _base_log_floor(p, n):
    return int(math.log(max(n, 1)) / math.log(p)) + 1


def pexp(ctx, x):
    """p-adic exponential on pZ_p (p odd)."""
    x = ctx.scalar(x)
    if x.residue % ctx.p != 0:
        raise LogDomainError("v_p(x) >= 1 required")
    kg = ctx.precision + ctx.guard
    total = 1
    power = 1
    fact = 1
    n = 1
    # term valuation grows at least n(p-2)/(p-1) >= n/2 for p >= 3
    while n <= 2 * kg + 4:
        power = power * x.residue % ctx.modulus
        fact *= n
        total = (total + _div_exact(ctx, power, fact)) % ctx.modulus
        n += 1
    return PadicScalar(ctx, total)


def angle_pow(ctx, a, s):
    """<a>^s for s in Z_p (PadicScalar) or an integer exponent."""
    base = angle(ctx, a)
    if isinstance(s, int):
        return base**s
    s = ctx.scalar(s)
    return pexp(ctx, s * plog(ctx, base))


class PadicCoefficientSource:
    """Coefficient accessor n -> Z_p with multiplicativity flags."""

    def __init__(self, coeff, multiplicative=True, completely_multiplicative=False):
        self._coeff = coeff
        self.multiplicative = multiplicative
        self.completely_multiplicative = completely_multiplicative

    def coeff(self, ctx, n):
        return ctx.scalar(self._coeff(n))


def trivial_padic_source():
    return PadicCoefficientSource(lambda n: 1, completely_multiplicative=True)


def _primitive_root(p):
    order_factors = [q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in order_factors):
            return g
    raise AssertionError("no primitive root found")


def padic_character_source(chi, ctx):
    """Embed a Dirichlet character with values of order dividing p-1 into Z_p.

    Each value exp(2 pi i k/m) maps to zeta^k where zeta is the Teichmuller
    root of unity of order m.
    """
    m = chi.order()
    if (ctx.p - 1) % m != 0:
        raise EmbeddingError()
    g = _primitive_root(ctx.p)
    zeta = teichmuller(ctx, pow(g, (ctx.p - 1) // m, ctx.p))
    q = chi.modulus
    table = {}
    for r in range(q):
        v = chi(r)
        if abs(v) < 1e-12:
            table[r] = 0
        else:
            k = round(math.atan2(v.imag, v.real) * m / (2 * math.pi)) % m
            if abs(v - complex(math.cos(2 * math.pi * k / m), math.sin(2 * math.pi * k / m))) > 1e-8:
                raise EmbeddingError()
            table[r] = (zeta**k).residue

    return PadicCoefficientSource(
        lambda n: table[n % q], completely_multiplicative=True
    )


def _twist_valuation(ctx, alpha):
    alpha = ctx.scalar(alpha)
    j = alpha.valuation()
    if j < 1:
        raise ContractionError()
    return alpha, j


def _exact_support(ctx, alpha_valuation):
    """All n coprime to p with j*S(n) < K+g: the exact support of the twist."""
    kg = ctx.precision + ctx.guard
    m_max = (kg - 1) // alpha_valuation
    for m in range(m_max + 1):
        for n in sopfr_preimages(m):
            if n % ctx.p != 0:
                yield m, n


def eval_padic_series(ctx, src, alpha, s):
    """L_p(s, c, psi) = sum over (n,p)=1 of alpha^S(n) c(n) <n>^{-s}, exact
    mod p^K thanks to the finite support of the contractive twist."""
    alpha, j = _twist_valuation(ctx, alpha)
    neg_s = -s if isinstance(s, int) else -ctx.scalar(s)
    total = ctx.scalar(0)
    for m, n in _exact_support(ctx, j):
        term = (alpha**m) * src.coeff(ctx, n) * angle_pow(ctx, n, neg_s)
        total = total + term
    return total


def eval_padic_euler(ctx, src, alpha, s, prime_bound):
    """Euler product over primes l <= prime_bound, l != p.

    Requires prime_bound to cover every prime l with j*l < K+g; all omitted
    factors are then congruent to 1 mod p^(K+g).
    """
    alpha, j = _twist_valuation(ctx, alpha)
    kg = ctx.precision + ctx.guard
    needed = [l for l in primes_upto(kg // j + 1) if j * l < kg and l != ctx.p]
    if needed and prime_bound < max(needed):
        raise InsufficientPrimeBoundError()
    neg_s = -s if isinstance(s, int) else -ctx.scalar(s)
    value = ctx.scalar(1)
    for l in primes_upto(int(prime_bound)):
        if l == ctx.p:
            continue
        lp = angle_pow(ctx, l, neg_s)
        if src.completely_multiplicative:
            factor = (ctx.scalar(1) - alpha**l * src.coeff(ctx, l) * lp).inverse()
        else:
            factor = ctx.scalar(1)
            m = 1
            lp_m = lp
            while j * l * m < kg:
                factor = factor + alpha ** (l * m) * src.coeff(ctx, l**m) * lp_m
                lp_m = lp_m * lp
                m += 1
        value = value * factor
    return value


def mahler_coefficients(ctx, src, alpha, n_max):
    """M_n = sum over the exact support of alpha^S(a) c(a) (<a> - 1)^n."""
    alpha, j = _twist_valuation(ctx, alpha)
    support = [
        (m, n, (alpha**m) * src.coeff(ctx, n), angle(ctx, n) - 1)
        for m, n in _exact_support(ctx, j)
    ]
    out = []
    for n in range(n_max + 1):
        total = ctx.scalar(0)
        for _, _, w, delta in support:
            total = total + w * delta**n
        out.append(total)
    return out


def eval_mahler(ctx, mahler, s):
    """Sum of M_n * binom(-s, n) over the supplied coefficients."""
    neg_s = ctx.scalar(-s) if isinstance(s, int) else -ctx.scalar(s)
    total = ctx.scalar(0)
    binom = ctx.scalar(1)
    for n, m_n in enumerate(mahler):
        if n > 0:
            # binom(-s, n) = binom(-s, n-1) * (-s - n + 1) / n
            binom = binom * (neg_s - (n - 1))
            binom = PadicScalar(ctx, _div_exact(ctx, binom.residue, n))
        total = total + m_n * binom
    return total
