import math
import random
from pathlib import Path

import pytest

from psitwist import sources
from psitwist.arith import primes_upto
from psitwist.errors import (
    BadReductionError,
    MissingCoefficientError,
    PrimeBoundError,
)

DATA = Path(__file__).parent / "data"


def delta_form():
    return sources.NewformSource.from_file(
        12, 1, sources.DirichletCharacter.trivial(1), DATA / "delta_ap.txt"
    )


class TestDirichletCharacter:
    def test_quadratic_mod4_values(self):
        chi = sources.DirichletCharacter.quadratic_mod4()
        assert [chi(n) for n in range(1, 5)] == [1, 0, -1, 0]
        assert chi(9) == 1

    def test_rejects_non_multiplicative(self):
        with pytest.raises(ValueError):
            sources.DirichletCharacter(4, [1, 0, 1j, 0])

    def test_rejects_support_violation(self):
        with pytest.raises(ValueError):
            sources.DirichletCharacter(4, [1, 1, -1, 0])

    def test_trivial_mod_one(self):
        chi = sources.DirichletCharacter.trivial(1)
        assert chi(17) == 1

    def test_order(self):
        assert sources.DirichletCharacter.quadratic_mod4().order() == 2
        assert sources.DirichletCharacter.trivial(1).order() == 1

    def test_file_roundtrip(self, tmp_path):
        path = tmp_path / "chi.txt"
        path.write_text("1 1\n2 0\n3 -1\n4 0\n")
        chi = sources.DirichletCharacter.from_file(path)
        assert chi.modulus == 4
        assert chi(3) == -1


class TestZetaSource:
    def test_coefficients(self):
        z = sources.zeta_source()
        assert z.coeff(10**6) == 1

    def test_local_factor(self):
        z = sources.zeta_source()
        f = z.local_factor(7)
        assert f.coeffs == ((1 + 0j), (-1 + 0j))
        assert f.inverse_roots == ((1 + 0j),)


class TestCharacterSource:
    def test_mod_one_is_zeta(self):
        src = sources.character_source(sources.DirichletCharacter.trivial(1))
        assert src.kind == "zeta"

    def test_mod4_coefficients(self):
        src = sources.character_source(sources.DirichletCharacter.quadratic_mod4())
        assert [src.coeff(n) for n in range(1, 5)] == [1, 0, -1, 0]
        assert src.bad_primes == {2}

    def test_degenerate_factor_at_two(self):
        src = sources.character_source(sources.DirichletCharacter.quadratic_mod4())
        assert src.local_factor(2).coeffs == ((1 + 0j),)
        assert src.local_factor(2).degree == 0


class TestNewformSource:
    def test_hecke_recursion_c4(self):
        nf = sources.newform_source(
            12, 1, sources.DirichletCharacter.trivial(1), {2: -24}
        )
        assert nf.coeff(4) == (-24) ** 2 - 2**11

    def test_bad_prime_powers(self):
        nf = sources.newform_source(
            2, 4, sources.DirichletCharacter.trivial(1), {2: 0, 3: 1}
        )
        for m in range(1, 5):
            assert nf.coeff(2**m) == 0

    def test_multiplicativity(self):
        nf = delta_form()
        assert nf.coeff(6) == nf.coeff(2) * nf.coeff(3)

    def test_known_tau_values(self):
        nf = delta_form()
        assert nf.coeff(2) == -24
        assert nf.coeff(3) == 252
        assert nf.coeff(5) == 4830
        assert nf.coeff(7) == -16744

    def test_missing_coefficient_reports_prime(self):
        nf = sources.newform_source(
            12, 1, sources.DirichletCharacter.trivial(1), {2: -24}
        )
        with pytest.raises(MissingCoefficientError, match="p=3"):
            nf.coeff(9)

    def test_deligne_bound_sampled(self):
        nf = delta_form()
        for p in primes_upto(500):
            assert abs(nf.coeff(p)) <= 2 * p ** (11 / 2) + 1e-6

    def test_roots_have_weight_modulus(self):
        nf = delta_form()
        for p in (2, 3, 5, 97):
            f = nf.local_factor(p)
            for r in f.inverse_roots:
                assert abs(abs(r) - p ** (11 / 2)) <= 1e-8 * p ** (11 / 2)


def naive_point_count(curve, p):
    """Independent O(p^2) oracle: enumerate all (x, y) pairs."""
    count = 1
    for x in range(p):
        f = (x**3 + curve.a * x + curve.b) % p
        for y in range(p):
            if (y * y - f) % p == 0:
                count += 1
    return count


class TestPointCounting:
    curve = sources.EllipticCurve(-1, 0)

    def test_known_counts(self):
        assert sources.count_points(self.curve, 5) == 8
        assert sources.count_points(self.curve, 3) == 4

    def test_against_naive_oracle(self):
        for p in primes_upto(97):
            if self.curve.discriminant % p == 0 or p == 2:
                continue
            assert sources.count_points(self.curve, p) == naive_point_count(
                self.curve, p
            )

    def test_second_curve_against_oracle(self):
        curve = sources.EllipticCurve(2, 3)
        for p in primes_upto(60):
            if curve.discriminant % p == 0 or p == 2:
                continue
            assert sources.count_points(curve, p) == naive_point_count(curve, p)

    def test_hasse_bound(self):
        for p in primes_upto(1000):
            if self.curve.discriminant % p == 0 or p == 2:
                continue
            n = sources.count_points(self.curve, p)
            assert abs(p + 1 - n) <= 2 * math.sqrt(p)

    def test_rejects_bad_reduction(self):
        with pytest.raises(BadReductionError):
            sources.count_points(self.curve, 2)

    def test_rejects_singular_curve(self):
        with pytest.raises(ValueError):
            sources.EllipticCurve(0, 0)


class TestEllipticSource:
    def make(self, bound=10**4):
        return sources.elliptic_source(
            sources.EllipticCurve(-1, 0), {2}, {2: 0}, bound
        )

    def test_ap_values(self):
        src = self.make()
        assert src.coeff(5) == -2
        assert src.coeff(3) == 0

    def test_weight_and_degree(self):
        src = self.make()
        assert src.degree == 2
        assert src.weight == 1

    def test_prime_bound_error(self):
        src = self.make(bound=50)
        with pytest.raises(PrimeBoundError):
            src.coeff(101)

    def test_bad_coeff_validation(self):
        with pytest.raises(ValueError):
            sources.elliptic_source(
                sources.EllipticCurve(-1, 0), {2}, {2: 5}, 100
            )
        with pytest.raises(ValueError):
            sources.elliptic_source(
                sources.EllipticCurve(-1, 0), {2}, {3: 0}, 100
            )

    def test_pole_real_part_ingredients(self):
        src = self.make()
        f = src.local_factor(5)
        for r in f.inverse_roots:
            assert abs(abs(r) - math.sqrt(5)) < 1e-10


@pytest.mark.parametrize(
    "make_src",
    [
        sources.zeta_source,
        lambda: sources.character_source(sources.DirichletCharacter.quadratic_mod4()),
        delta_form,
        lambda: sources.elliptic_source(
            sources.EllipticCurve(-1, 0), {2}, {2: 0}, 10**4
        ),
    ],
    ids=["zeta", "chi4", "newform", "elliptic"],
)
def test_sampled_multiplicativity(make_src):
    src = make_src()
    rng = random.Random(23)
    done = 0
    while done < 500:
        m = rng.randrange(1, 100)
        n = rng.randrange(1, 10**4 // m + 1)
        if math.gcd(m, n) != 1:
            continue
        lhs = src.coeff(m * n)
        rhs = src.coeff(m) * src.coeff(n)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))
        done += 1


@pytest.mark.parametrize(
    "make_src",
    [
        sources.zeta_source,
        lambda: sources.character_source(sources.DirichletCharacter.quadratic_mod4()),
        delta_form,
    ],
    ids=["zeta", "chi4", "newform"],
)
def test_local_factor_roots_reproduce_polynomial(make_src):
    src = make_src()
    for p in primes_upto(1000):
        f = src.local_factor(p)
        # expand prod (1 - r T) and compare coefficient-wise
        coeffs = [1 + 0j]
        for r in f.inverse_roots:
            nxt = [0j] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] += c
                nxt[i + 1] -= c * r
            coeffs = nxt
        scale = max(abs(c) for c in f.coeffs)
        assert all(
            abs(a - b) <= 1e-10 * scale for a, b in zip(coeffs, f.coeffs)
        ), p


def test_coeff_block_matches_pointwise():
    src = delta_form()
    block = src.coeff_block(200)
    for n in range(1, 201):
        assert block[n - 1] == src.coeff(n)
