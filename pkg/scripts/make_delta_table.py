#!/usr/bin/env python3
"""Generate tests/data/delta_ap.txt: tau(p) for primes p below a cutoff.

tau(n) is read off the q-expansion q * prod_{n>=1} (1 - q^n)^24, computed with
exact integer arithmetic: the Euler product prod (1 - q^n) is expanded via the
pentagonal number theorem and raised to the 24th power by repeated truncated
polynomial multiplication.  Sanity checks: the classical small values and the
congruence tau(n) = sigma_11(n) mod 691.
"""

import sys
from pathlib import Path

N = 10002  # coefficients 0..N-1 of E^24; tau(p) needs p <= N-2


def euler_poly(n):
    """Coefficients of prod (1 - q^k) mod q^n (pentagonal number theorem)."""
    c = [0] * n
    c[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 >= n and g2 >= n:
            break
        sign = 1 if k % 2 == 0 else -1
        if g1 < n:
            c[g1] += sign
        if g2 < n:
            c[g2] += sign
        k += 1
    return c


def mul_trunc(a, b, n):
    out = [0] * n
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(min(len(b), n - i)):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def sigma11(n):
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += d**11
    return total


def main():
    e = euler_poly(N)
    e2 = mul_trunc(e, e, N)
    e4 = mul_trunc(e2, e2, N)
    e8 = mul_trunc(e4, e4, N)
    e16 = mul_trunc(e8, e8, N)
    e24 = mul_trunc(e16, e8, N)
    tau = lambda n: e24[n - 1]  # Delta = q * E^24

    assert tau(1) == 1
    assert tau(2) == -24
    assert tau(3) == 252
    assert tau(5) == 4830
    assert tau(7) == -16744
    assert tau(11) == 534612
    for n in (30, 100, 691, 1000, 2999, 9973):
        assert (tau(n) - sigma11(n)) % 691 == 0, n

    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "delta_ap.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        fh.write("# tau(p) for the weight-12 level-1 cusp form, p < %d\n" % (N - 1))
        p = 2
        sieve = [True] * N
        for p in range(2, N - 1):
            if not sieve[p]:
                continue
            for m in range(p * p, N, p):
                sieve[m] = False
            fh.write(f"{p} {tau(p)}\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    sys.exit(main())
