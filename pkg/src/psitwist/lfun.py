"""Complex-analytic evaluation of psi-twisted L-functions.

Three evaluation routes are provided and cross-checked against each other:
the Dirichlet series, the Euler product over primes up to a bound, and the
split form (finite product over p < X times the series restricted to n
coprime to those primes) which evaluates the function left of the series
abscissa.  Pole enumeration, sandwich magnitude bounds and a Mellin-transform
quadrature check complete the module.

Every evaluation returns a certified truncation bound along with the value.
The decay engine throughout is S(n) >= (q/log q) log n for integers whose
prime factors are >= q.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from . import _kernels
from .arith import TwistParameter, primes_upto, sopfr_preimages
from .errors import (
    BoundUndefinedError,
    DivergentRegionError,
    PoleHitError,
    QuadratureError,
)
from .sources import CharacterSource, character_source

POLE_HIT_EPS = 1e-12
PRIME_SUM_CUTOFF = 1e-18


@dataclass(frozen=True)
class EvalResult:
    value: complex
    truncation_bound: float
    terms_used: int


@dataclass(frozen=True)
class Pole:
    prime: int
    root_index: int
    branch: int
    location: complex


@dataclass(frozen=True)
class BoundsPair:
    lower: float
    upper: float
    sigma: float
    alpha: complex


def _alpha_of(t):
    return t.alpha if isinstance(t, TwistParameter) else complex(t)


def _good_primes(src, limit=1000):
    """Good primes ordered by increasing p/log p (3, 2, 5, 7, ...)."""
    ordered = [3, 2] + primes_upto(limit)[2:]
    return [p for p in ordered if src.is_good(p)]


def abscissa(src, t):
    """Shared abscissa of convergence and absolute convergence.

    Equals (q/log q) log|alpha| + w/2 where q minimises p/log p over good
    primes; the minimiser is 3 if good, else 2, else the first good prime
    above 3 (x/log x increases for x > e).
    """
    alpha = _alpha_of(t)
    if abs(alpha) >= 1:
        raise DivergentRegionError("|alpha| < 1 required")
    if alpha == 0:
        return -math.inf
    q = _good_primes(src)[0]
    return q / math.log(q) * math.log(abs(alpha)) + src.weight / 2


def _prime_tail_sum(beta, t, x):
    """Certified upper bound for sum over primes p > x of beta^p p^t.

    Bounds the prime sum by the integer sum n > x; for t > 0 the factor n^t
    is absorbed into sqrt(beta)^n before summing the geometric series.
    """
    if beta == 0:
        return 0.0
    if t <= 0:
        return x**t * beta ** (x + 1) / (1 - beta)
    gamma = math.sqrt(beta)
    n_peak = t / math.log(1 / gamma)
    n_star = max(x + 1, n_peak)
    peak = n_star**t * gamma**n_star
    return peak * gamma ** (x + 1) / (1 - gamma)


def _roundoff(value, terms):
    """Floating-point accumulation allowance added to certified tail bounds."""
    return 1e-15 * abs(value) * max(1.0, math.log2(max(terms, 2)))


def _series_tail_bound(c_scale, decay_exp, n_trunc):
    """Integral-test bound for c_scale * sum_{n > n_trunc} n^decay_exp."""
    if decay_exp >= -1:
        return math.inf
    return c_scale * n_trunc ** (decay_exp + 1) / (-decay_exp - 1)


def _coeff_scale(c_block, weight):
    """Crude bound C with |c(n)| <= (C/2) n^(w/2) over the computed range."""
    n = np.arange(1, c_block.size + 1)
    return 2.0 * float(np.max(np.abs(c_block) * n ** (-weight / 2)))


def eval_series(src, t, s, n_terms):
    """Partial sum of the twisted Dirichlet series with a certified tail bound."""
    alpha = _alpha_of(t)
    s = complex(s)
    n = int(n_terms)
    spf = _kernels.spf_table(n)
    s_table = _kernels.sopfr_table(n, spf)
    c = src.coeff_block(n, spf)
    if alpha == 0:
        psi_vec = np.zeros(n, dtype=complex)
        psi_vec[np.asarray(s_table[1:]) == 0] = 1.0
    else:
        psi_vec = np.power(alpha, np.asarray(s_table[1:]))
    npow = np.exp(-s * np.log(np.arange(1, n + 1)))
    value = complex(np.sum(c * psi_vec * npow))
    if alpha == 0:
        return EvalResult(value, 0.0, n)
    decay = 3 / math.log(3) * math.log(abs(alpha)) + src.weight / 2 - s.real
    bound = _series_tail_bound(_coeff_scale(c, src.weight), decay, n)
    return EvalResult(value, bound + _roundoff(value, n), n)


def _factor_value(src, p, alpha, s):
    """P_p(alpha^p p^{-s}) evaluated through the stored local polynomial."""
    factor = src.local_factor(p)
    arg = cmath.exp(p * cmath.log(alpha) - s * math.log(p)) if alpha != 0 else 0j
    return factor(arg)


def eval_euler(src, t, s, prime_bound):
    """Euler product over p <= prime_bound inside the convergence half-plane."""
    alpha = _alpha_of(t)
    s = complex(s)
    sigma_a = abscissa(src, t)
    if s.real <= sigma_a:
        raise DivergentRegionError()
    value = 1 + 0j
    primes = primes_upto(int(prime_bound))
    for p in primes:
        v = _factor_value(src, p, alpha, s)
        if abs(v) < POLE_HIT_EPS:
            raise PoleHitError()
        value /= v
    if alpha == 0:
        return EvalResult(value, 0.0, len(primes))
    beta = abs(alpha)
    texp = src.weight / 2 - s.real
    tail_u = _prime_tail_sum(beta, texp, prime_bound)
    # largest omitted u_p, bounded the same way over a single term
    u_head = min(tail_u, 1.0)
    if u_head >= 1.0 - 1e-12:
        return EvalResult(value, math.inf, len(primes))
    log_margin = src.degree * tail_u / (1 - u_head)
    bound = abs(value) * math.expm1(log_margin) + _roundoff(value, len(primes))
    return EvalResult(value, bound, len(primes))


def _restricted_decay_prime(x):
    """Effective decay prime for the series restricted to factors >= x."""
    if x <= 3:
        return 3
    q = int(x)
    while not _is_prime_small(q):
        q += 1
    return q


def _is_prime_small(n):
    if n < 2:
        return False
    for p in primes_upto(max(2, math.isqrt(n))):
        if p * p > n:
            break
        if n % p == 0:
            return False
    return True


def _coeffs_at(src, indices, spf):
    """c(n) for selected n via smallest-prime-factor factorisation."""
    cache = {}
    out = np.empty(indices.size, dtype=complex)
    for k, n in enumerate(indices):
        n = int(n)
        if n == 1:
            out[k] = 1.0
            continue
        value = 1 + 0j
        while n > 1:
            p = int(spf[n])
            m = 0
            while n % p == 0:
                n //= p
                m += 1
            key = (p, m)
            cp = cache.get(key)
            if cp is None:
                cp = src.coeff_prime_power(p, m)
                cache[key] = cp
            value *= cp
        out[k] = value
    return out


def eval_split(src, t, s, split_prime, n_terms):
    """Finite product over p < split_prime times the coprime-restricted series.

    This is the computational meromorphic continuation: it is valid for
    Re(s) above (q/log q) log|alpha| + w/2 with q the first prime >= the
    split point, i.e. left of the plain series abscissa once split_prime > 3.
    """
    alpha = _alpha_of(t)
    s = complex(s)
    x = int(split_prime)
    n = int(n_terms)
    q = _restricted_decay_prime(x)
    restricted_absc = (
        q / math.log(q) * math.log(abs(alpha)) + src.weight / 2
        if alpha != 0
        else -math.inf
    )
    if s.real <= restricted_absc:
        raise DivergentRegionError()

    head_primes = [p for p in primes_upto(x - 1)]
    prod = 1 + 0j
    for p in head_primes:
        v = _factor_value(src, p, alpha, s)
        if abs(v) < POLE_HIT_EPS:
            raise PoleHitError()
        prod /= v

    spf = _kernels.spf_table(n)
    s_table = _kernels.sopfr_table(n, spf)
    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    for p in head_primes:
        mask[p::p] = False
    ns = np.nonzero(mask)[0]
    c = _coeffs_at(src, ns, spf)
    if alpha == 0:
        psi_vec = np.where(np.asarray(s_table)[ns] == 0, 1.0 + 0j, 0j)
    else:
        psi_vec = np.power(alpha, np.asarray(s_table)[ns])
    series = complex(np.sum(c * psi_vec * np.exp(-s * np.log(ns))))

    if alpha == 0:
        return EvalResult(prod * series, 0.0, len(ns))
    decay = q / math.log(q) * math.log(abs(alpha)) + src.weight / 2 - s.real
    scale = _coeff_scale(c, src.weight) if c.size else 2.0
    value = prod * series
    bound = _series_tail_bound(scale, decay, n) * abs(prod)
    return EvalResult(value, bound + _roundoff(value, len(ns)), len(ns))


def poles(src, t, re_min, re_max, im_max):
    """Enumerate the pole lattice in the given rectangle.

    Solutions of alpha^p c_{p,i} p^{-s} = 1 at good primes p:
    s = (p log alpha + log c_{p,i} + 2 pi i k) / log p with principal
    logarithms and integer branch k.  Sorted by decreasing Re, then |Im|.
    """
    alpha = _alpha_of(t)
    if not (0 < abs(alpha) < 1):
        raise ValueError("0 < |alpha| < 1 required for pole enumeration")
    if not (math.isfinite(re_min) and math.isfinite(re_max) and math.isfinite(im_max)):
        raise ValueError("finite region bounds required")
    log_alpha = cmath.log(alpha)
    out = []
    for p in primes_upto(4000):
        if not src.is_good(p):
            continue
        real_part = p / math.log(p) * math.log(abs(alpha)) + src.weight / 2
        if p >= 3 and real_part < re_min:
            break
        if not (re_min <= real_part <= re_max):
            continue
        factor = src.local_factor(p)
        logp = math.log(p)
        for i, root in enumerate(factor.inverse_roots, start=1):
            if root == 0:
                continue
            base = p * log_alpha + cmath.log(root)
            k_center = -base.imag / (2 * math.pi)
            k_span = im_max * logp / (2 * math.pi) + 1
            for k in range(math.floor(k_center - k_span), math.ceil(k_center + k_span) + 1):
                s = (base + 2j * math.pi * k) / logp
                if abs(s.imag) <= im_max and re_min <= s.real <= re_max:
                    out.append(Pole(p, i, k, s))
    out.sort(key=lambda q: (-q.location.real, abs(q.location.imag), q.prime, q.root_index, q.branch))
    return out


def verify_pole(src, t, pole):
    """Residual |P_p(alpha^p p^{-s})| at the claimed pole location."""
    alpha = _alpha_of(t)
    return abs(_factor_value(src, pole.prime, alpha, pole.location))


def alpha_expansion(src, s, m_max):
    """Coefficients A_0..A_m of the power series in alpha:
    A_m = sum of c(n) n^{-s} over n with S(n) = m."""
    if m_max > 60:
        raise ValueError("expansion order capped at 60 (preimage enumeration)")
    s = complex(s)
    out = []
    for m in range(m_max + 1):
        total = 0j
        for n in sopfr_preimages(m):
            total += src.coeff(n) * cmath.exp(-s * math.log(n)) if n > 1 else src.coeff(1)
        out.append(total)
    return out


def magnitude_bounds(degree, weight, alpha, sigma, start_prime=2, skip=()):
    """Sandwich bounds exp(-sum d u_p) <= |L_S| <= exp(sum d u_p/(1-u_p))
    with u_p = |alpha|^p p^(w/2 - sigma), summed over good primes."""
    beta = abs(_alpha_of(alpha))
    lo_sum = 0.0
    hi_sum = 0.0
    for p in primes_upto(20000):
        if p < start_prime or p in skip:
            continue
        u = beta**p * p ** (weight / 2 - sigma)
        if u >= 1:
            raise BoundUndefinedError()
        lo_sum += degree * u
        hi_sum += degree * u / (1 - u)
        if u < PRIME_SUM_CUTOFF and p > 11:
            break
    return math.exp(-lo_sum), math.exp(hi_sum)


def bounds(src, t, sigma, remove_below=None):
    """Magnitude bounds for the source, Euler factors at bad primes removed."""
    alpha = _alpha_of(t)
    if sigma <= abscissa(src, t):
        raise BoundUndefinedError()
    start = remove_below if remove_below is not None else 2
    lower, upper = magnitude_bounds(
        src.degree, src.weight, alpha, sigma, start_prime=start, skip=src.bad_primes
    )
    return BoundsPair(lower, upper, sigma, alpha)


def mellin_check(chi, t, s, tol=1e-8):
    """Evaluate L(s, psi chi) as (1/Gamma(s)) Mellin transform of
    G(x) = sum psi(n) chi(n) e^{-nx}, by adaptive quadrature."""
    alpha = _alpha_of(t)
    s = complex(s)
    if s.real <= 0:
        raise ValueError("Re(s) > 0 required")
    if not abs(alpha) < 1:
        raise ValueError("|alpha| < 1 required")

    n_cap = 100_000
    spf = _kernels.spf_table(n_cap)
    s_table = np.asarray(_kernels.sopfr_table(n_cap, spf))[1:]
    src = character_source(chi)
    weights = src.coeff_block(n_cap, spf) * np.power(alpha, s_table)
    n_arr = np.arange(1, n_cap + 1, dtype=float)

    def g(x):
        expo = -x * n_arr
        np.clip(expo, -745.0, None, out=expo)
        return np.sum(weights * np.exp(expo))

    g0_abs = float(np.sum(np.abs(weights)))
    x_max = 60.0
    while g0_abs * math.exp(-x_max) * x_max ** max(s.real - 1, 0) > 1e-14:
        x_max += 20.0

    def integrand(x, pick):
        v = g(x) * cmath.exp((s - 1) * math.log(x))
        return v.real if pick == 0 else v.imag

    parts = []
    for pick in (0, 1):
        val, err = integrate.quad(
            integrand, 0.0, x_max, args=(pick,), limit=300, epsabs=tol, epsrel=tol
        )
        if err > 1e-6 * max(1.0, abs(val)) and err > 1e-6:
            raise QuadratureError()
        parts.append(val)
    return complex(parts[0], parts[1]) / special.gamma(s)
