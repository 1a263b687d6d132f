"""Dense univariate layer: arithmetic identities and gcd behavior."""

import random
from fractions import Fraction

import sympy

from septiq import univar
from septiq.fields import PrimeField, QQ


def _rand_poly(rng, field, max_deg=6):
    coeffs = [field.from_int(rng.randint(-9, 9))
              for _ in range(rng.randint(0, max_deg) + 1)]
    return univar.normalize(coeffs, field)


def test_divmod_reconstruction():
    rng = random.Random(11)
    for field in (QQ, PrimeField(13)):
        for _ in range(150):
            f = _rand_poly(rng, field)
            g = _rand_poly(rng, field)
            if univar.degree(g) < 0:
                continue
            q, r = univar.divmod_(field, f, g)
            back = univar.add(field, univar.mul(field, q, g), r)
            assert back == univar.normalize(f, field)
            assert univar.degree(r) < univar.degree(g)


def test_gcd_by_construction():
    rng = random.Random(12)
    for field in (QQ, PrimeField(101)):
        for _ in range(60):
            a = _rand_poly(rng, field, 3)
            b = _rand_poly(rng, field, 3)
            c = _rand_poly(rng, field, 3)
            if univar.degree(c) < 1:
                continue
            g = univar.gcd_monic(field, univar.mul(field, a, c),
                                 univar.mul(field, b, c))
            # the built-in common factor must divide the gcd
            _, rem = univar.divmod_(field, g, univar.monic(field, c))
            if univar.degree(univar.gcd_monic(field, a, b)) == 0:
                assert univar.degree(rem) < 0


def test_qq_gcd_matches_sympy():
    rng = random.Random(13)
    x = sympy.Symbol("x")
    for _ in range(40):
        f = _rand_poly(rng, QQ, 6)
        g = _rand_poly(rng, QQ, 6)
        if univar.degree(f) < 0 or univar.degree(g) < 0:
            continue
        got = univar.qq_gcd(f, g)
        fs = sympy.Poly(list(reversed(f)), x, domain="QQ")
        gs = sympy.Poly(list(reversed(g)), x, domain="QQ")
        want = sympy.gcd(fs, gs).monic()
        want_coeffs = univar.normalize(
            [Fraction(str(c)) for c in reversed(want.all_coeffs())], QQ)
        assert univar.monic(QQ, got) == want_coeffs


def test_zz_gcd_primitive():
    rng = random.Random(14)
    for _ in range(60):
        a = tuple(rng.randint(-20, 20) for _ in range(rng.randint(1, 6)))
        b = tuple(rng.randint(-20, 20) for _ in range(rng.randint(1, 6)))
        a = tuple(int(v) for v in a)
        fa = univar.normalize([Fraction(v) for v in a], QQ)
        fb = univar.normalize([Fraction(v) for v in b], QQ)
        if univar.degree(fa) < 0 or univar.degree(fb) < 0:
            continue
        g_int = univar.zz_gcd(tuple(int(c) for c in fa),
                              tuple(int(c) for c in fb))
        g_frac = univar.qq_gcd(fa, fb)
        if univar.degree(g_frac) >= 0:
            gm = univar.monic(
                QQ, univar.normalize([Fraction(c) for c in g_int], QQ))
            assert gm == univar.monic(QQ, g_frac)


def test_ext_gcd_bezout():
    rng = random.Random(15)
    K = PrimeField(101)
    for _ in range(60):
        f = _rand_poly(rng, K, 5)
        g = _rand_poly(rng, K, 5)
        if univar.degree(f) < 0 or univar.degree(g) < 0:
            continue
        d, u, v = univar.ext_gcd(K, f, g)
        lhs = univar.add(K, univar.mul(K, u, f), univar.mul(K, v, g))
        assert lhs == univar.normalize(d, K)


def test_derivative_product_rule():
    rng = random.Random(16)
    for _ in range(60):
        f = _rand_poly(rng, QQ, 4)
        g = _rand_poly(rng, QQ, 4)
        lhs = univar.derivative(QQ, univar.mul(QQ, f, g))
        rhs = univar.add(
            QQ,
            univar.mul(QQ, univar.derivative(QQ, f), g),
            univar.mul(QQ, f, univar.derivative(QQ, g)))
        assert lhs == rhs


def test_evaluate_homomorphism():
    rng = random.Random(17)
    for _ in range(60):
        f = _rand_poly(rng, QQ, 4)
        g = _rand_poly(rng, QQ, 4)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        fg = univar.mul(QQ, f, g)
        assert univar.evaluate(QQ, fg, c) == \
            univar.evaluate(QQ, f, c) * univar.evaluate(QQ, g, c)
