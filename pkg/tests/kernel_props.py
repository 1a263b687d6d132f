"""Kernel property checks shared between the unit suites and the
acceptance gate.  Every function raises AssertionError with a readable
message on violation and returns quietly on success, so callers can
either let pytest surface the failure or wrap it into a report line.
"""

from fractions import Fraction

from septiq.family import (
    FamilyParams,
    family_surface,
    line_product,
    plane_product,
    surface_ring,
    weight_rescale,
)
from septiq.fields import FieldElement, PrimeField, QQ
from septiq.groebner import groebner_basis, ideal_quotient, normal_form
from septiq.poly import Degrevlex, Ring, divide_univariate, resultant
from septiq import univar


def field_axioms(field, rng, triples=1000):
    """Commutative-field laws on random triples, plus inverses."""
    for i in range(triples):
        a = field.random_element(rng)
        b = field.random_element(rng)
        c = field.random_element(rng)
        assert field.eq(field.add(a, b), field.add(b, a)), \
            f"{field}: addition not commutative at triple {i}"
        assert field.eq(field.mul(a, b), field.mul(b, a)), \
            f"{field}: multiplication not commutative at triple {i}"
        assert field.eq(field.add(field.add(a, b), c),
                        field.add(a, field.add(b, c))), \
            f"{field}: addition not associative at triple {i}"
        assert field.eq(field.mul(field.mul(a, b), c),
                        field.mul(a, field.mul(b, c))), \
            f"{field}: multiplication not associative at triple {i}"
        assert field.eq(field.mul(a, field.add(b, c)),
                        field.add(field.mul(a, b), field.mul(a, c))), \
            f"{field}: distributivity fails at triple {i}"
        assert field.eq(field.add(a, field.zero), a)
        assert field.eq(field.mul(a, field.one), a)
        assert field.eq(field.add(a, field.neg(a)), field.zero)
        assert field.eq(field.sub(a, b), field.add(a, field.neg(b)))
        if not field.is_zero(b):
            assert field.eq(field.mul(b, field.inv(b)), field.one), \
                f"{field}: inverse fails at triple {i}"
            assert field.eq(field.mul(field.div(a, b), b), a), \
                f"{field}: division inconsistent at triple {i}"


def _monomial(ring, exps):
    return ring.poly({tuple(exps): ring.field.one})


def spoly_reduces_to_zero(gb):
    """Buchberger criterion on a finished basis: every S-pair drops."""
    polys = list(gb)
    for i, f in enumerate(polys):
        for g in polys[i + 1:]:
            ef, eg = f.lm(), g.lm()
            lcm = tuple(max(a, b) for a, b in zip(ef, eg))
            mf = _monomial(f.ring, [l - a for l, a in zip(lcm, ef)])
            mg = _monomial(f.ring, [l - a for l, a in zip(lcm, eg)])
            s = mf * f.monic() - mg * g.monic()
            r = normal_form(s, gb)
            assert r.is_zero(), \
                f"S-polynomial of {f.to_str()} and {g.to_str()} " \
                f"leaves remainder {r.to_str()}"


def multiplicity_generator_independence(gens, rng, trials=50, budget=None):
    """Random regenerations of the same ideal must agree on
    multiplicity."""
    from septiq.groebner import multiplicity
    base = multiplicity(groebner_basis(gens, budget=budget))
    R = gens[0].ring
    K = R.field
    n = len(gens)
    for trial in range(trials):
        # invertible integer combination: triangular with unit diagonal,
        # applied in both orders so the mix is genuinely two-sided
        mixed = list(gens)
        for _ in range(2):
            i = rng.randrange(n)
            j = rng.randrange(n)
            if i == j:
                continue
            c = K.from_int(rng.randint(-3, 3))
            mixed[i] = mixed[i] + R.poly({(0,) * len(R.names): c}) * mixed[j]
        got = multiplicity(groebner_basis(mixed, budget=budget))
        assert got == base, \
            f"multiplicity changed under regeneration: {got} != {base} " \
            f"(trial {trial})"


def ideal_quotient_soundness(gens, f, rng, probes=20, budget=None):
    gb_i = groebner_basis(gens, budget=budget)
    quo = ideal_quotient(gens, f, budget=budget)
    gb_q = groebner_basis(quo, budget=budget)
    for g in quo:
        assert normal_form(g * f, gb_i).is_zero(), \
            f"quotient generator {g.to_str()} times f leaves the ideal"
    R = f.ring
    for _ in range(probes):
        h = _random_poly(R, rng, max_degree=2, terms=3)
        if normal_form(h * f, gb_i).is_zero():
            assert normal_form(h, gb_q).is_zero(), \
                f"h*f in I but h not in (I : f): {h.to_str()}"


def _random_poly(ring, rng, max_degree=2, terms=3):
    K = ring.field
    n = len(ring.names)
    out = ring.zero
    for _ in range(terms):
        exps = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(n)] += 1
        out = out + ring.poly({tuple(exps): K.from_int(rng.randint(-4, 4))})
    return out


def resultant_characterization(rng, cases=40):
    """res(f, g) = 0 exactly when f and g share a factor; checked by
    construction over QQ in one variable embedded in two."""
    R = Ring(("x", "y"), QQ, Degrevlex())
    x = R.var("x")
    for case in range(cases):
        a = rng.randint(-6, 6)
        b = rng.randint(-6, 6)
        c = rng.randint(-6, 6)
        while c == a:
            c = rng.randint(-6, 6)
        f = (x - a) * (x - b)
        g_shared = (x - b) * (x - c)
        g_coprime = (x - c) * (x - c)
        r_shared = resultant(f, g_shared, "x")
        assert r_shared.is_zero(), \
            f"shared root {b} but resultant {r_shared.to_str()}"
        r_cop = resultant(f, g_coprime, "x")
        if a != c and b != c:
            assert not r_cop.is_zero(), \
                f"coprime pair got zero resultant (case {case})"
    # the documented orientation: res(x-a, x-b) = a-b
    y = R.var("y")
    assert resultant(x - y, x - 2 * y, "x") == -y


def divide_univariate_identity(rng, cases=40):
    R = Ring(("z", "w"), QQ, Degrevlex())
    z, w = R.var("z"), R.var("w")
    for _ in range(cases):
        f = _random_poly(R, rng, max_degree=5, terms=6)
        dg = rng.randint(1, 3)
        g = z ** dg
        for k in range(dg):
            g = g + R.poly({(k, rng.randint(0, 2)):
                            QQ.from_int(rng.randint(-3, 3))})
        q, r = divide_univariate(f, g, "z")
        assert q * g + r == f, "reconstruction identity fails"
        assert r.degree_in("z") < g.degree_in("z"), \
            "remainder degree not reduced"


def line_product_identity():
    for field in (QQ, PrimeField(11), PrimeField(53)):
        R = Ring(("x", "z"), field, Degrevlex())
        L = line_product(R)
        x, z = R.var("x"), R.var("z")
        assert (x - z) * L * L == 16 * plane_product(R), \
            f"line product identity fails over {field.describe()}"


def weight_identity(rng, lambdas=6):
    """Rescaling w and rescaling the parameters give the same surface."""
    for p in (11, 31):
        K = PrimeField(p)
        ring = surface_ring(K)
        w = ring.var("w")
        for _ in range(lambdas):
            vals = [rng.randrange(p) for _ in range(5)]
            params = FamilyParams(K, vals)
            lam = rng.randrange(1, p)
            lam_e = FieldElement(K, K.from_int(lam))
            S1 = family_surface(weight_rescale(params, lam), ring)
            S2 = family_surface(params, ring).substitute(
                {"w": lam_e * w})
            assert S1 == S2, \
                f"weight action mismatch at p={p}, lambda={lam}, {vals}"
