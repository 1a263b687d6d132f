"""Buchberger loop, quotient invariants, elimination soundness."""

import random

import pytest
import sympy

import kernel_props as kp
from septiq.fields import PrimeField, QQ
from septiq.groebner import (
    BudgetExceededError,
    GroebnerBasis,
    Ideal,
    NotZeroDimensionalError,
    dimension,
    eliminate,
    groebner_basis,
    ideal_quotient,
    multiplicity,
    normal_form,
)
from septiq.poly import Degrevlex, Ring


@pytest.fixture
def R():
    return Ring(("x", "y", "z"), QQ, Degrevlex())


def _sympy_gb_lead_exps(gens, syms, modulus=None):
    kwargs = {"order": "grevlex"}
    if modulus:
        kwargs["modulus"] = modulus
    gb = sympy.groebner([sympy.sympify(g.to_str().replace("^", "**"))
                         for g in gens], *syms, **kwargs)
    out = set()
    for p in gb.polys:
        lead = p.LM(order="grevlex")
        out.add(tuple(int(e) for e in lead.exponents))
    return out


def test_single_generator_monic(R):
    x = R.var("x")
    gb = groebner_basis([2 * x - 2 * R.one])
    assert [p.to_str() for p in gb] == ["x-1"]


def test_redundant_generator_dropped(R):
    x, y = R.var("x"), R.var("y")
    f = x * x + y
    gb = groebner_basis([f, (y + R.one) * f])
    assert len(gb) == 1 and gb.polys[0] == f


def test_leading_ideals_match_sympy(R, rng):
    syms = sympy.symbols("x y z")
    for trial in range(15):
        gens = [kp._random_poly(R, rng, max_degree=3, terms=3)
                for _ in range(3)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        gb = groebner_basis(gens)
        mine = set(gb.lead_exps())
        want = _sympy_gb_lead_exps(gens, syms)
        assert mine == want, f"trial {trial}: {mine} != {want}"


def test_spoly_reduction_property(R, rng):
    for _ in range(10):
        gens = [kp._random_poly(R, rng, max_degree=3, terms=3)
                for _ in range(3)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        kp.spoly_reduces_to_zero(groebner_basis(gens))


def test_normal_form_membership(R):
    x, y = R.var("x"), R.var("y")
    gb = groebner_basis([x * x - y, y * y - R.one])
    member = (x * x - y) * (y + 3 * R.one) + (y * y - R.one) * x
    assert normal_form(member, gb).is_zero()
    assert not normal_form(x + y, gb).is_zero()
    # idempotence
    r = normal_form(x**5 + y, gb)
    assert normal_form(r, gb) == r


def test_dimension_examples():
    R4 = Ring(("x", "y", "z", "w"), QQ, Degrevlex())
    vs = [R4.var(n) for n in ("x", "y", "z", "w")]
    assert dimension(groebner_basis(vs)) == 0
    assert dimension(groebner_basis(vs[:2])) == 2


def test_multiplicity_examples(R):
    x, y, z = (R.var(n) for n in "xyz")
    assert multiplicity(groebner_basis([x, y, z])) == 1
    # staircase {1, x, y, xy}
    assert multiplicity(groebner_basis([x * x, y * y, z])) == 4


def test_multiplicity_needs_zero_dimensional(R):
    x = R.var("x")
    with pytest.raises(NotZeroDimensionalError):
        multiplicity(groebner_basis([x]))


def test_multiplicity_generator_independence(R, rng):
    x, y, z = (R.var(n) for n in "xyz")
    kp.multiplicity_generator_independence(
        [x * x, y * y - x, z * z + x * y, x * y * z], rng, trials=50)


def test_ideal_quotient_textbook(R):
    x, y = R.var("x"), R.var("y")
    quo = ideal_quotient([x * x, x * y], x)
    gb = groebner_basis(quo)
    assert normal_form(x, gb).is_zero()
    assert normal_form(y, gb).is_zero()


def test_ideal_quotient_by_one(R, rng):
    x, y, z = (R.var(n) for n in "xyz")
    gens = [x * x + y, y * z - R.one]
    quo = ideal_quotient(gens, R.one)
    gb_orig = groebner_basis(gens)
    gb_quo = groebner_basis(quo)
    for g in quo:
        assert normal_form(g, gb_orig).is_zero()
    for g in gens:
        assert normal_form(g, gb_quo).is_zero()


def test_ideal_quotient_soundness_random(R, rng):
    x, y, z = (R.var(n) for n in "xyz")
    kp.ideal_quotient_soundness([x * x * y - z * z, x * y * y + z], x, rng)


def test_eliminate_twisted_cubic():
    R = Ring(("x", "t", "s"), QQ, Degrevlex())
    x, t, s = (R.var(n) for n in ("x", "t", "s"))
    out = eliminate([t - x * x, s - x * x * x], ["x"])
    assert out, "elimination ideal should be nonzero"
    gb = groebner_basis(out)
    assert normal_form(s * s - t * t * t, gb).is_zero()
    for g in out:
        assert g.degree_in("x") == 0


def test_eliminate_nothing_is_identity(R):
    x, y = R.var("x"), R.var("y")
    gens = [x * x + y]
    assert eliminate(gens, []) == gens or \
        groebner_basis(eliminate(gens, [])).polys == \
        groebner_basis(gens).polys


def test_eliminate_soundness(R, rng):
    x, y, z = (R.var(n) for n in "xyz")
    gens = [x * y - z, x * x - y]
    out = eliminate(gens, ["x"])
    gb = groebner_basis(gens)
    for g in out:
        assert g.degree_in("x") == 0
        assert normal_form(g, gb).is_zero()


def test_budget_exhaustion_raises():
    R = Ring(("x", "y", "z"), PrimeField(32003), Degrevlex())
    x, y, z = (R.var(n) for n in "xyz")
    gens = [x * x - y, y * y - z, z * z - x * y]
    with pytest.raises(BudgetExceededError) as exc:
        groebner_basis(gens, budget=2)
    assert exc.value.pairs_reduced == 2
    groebner_basis(gens)  # unbounded run completes


def test_ideal_class_caches(R):
    x, y, z = (R.var(n) for n in "xyz")
    I = Ideal([x * x - y, y * y - 1, z])
    assert I.dimension() == 0
    assert I.multiplicity() == 4
    assert I.contains((x * x - y) * y)


def test_prime_field_basis_matches_sympy(rng):
    R = Ring(("x", "y"), PrimeField(7), Degrevlex())
    syms = sympy.symbols("x y")
    for _ in range(10):
        gens = [kp._random_poly(R, rng, max_degree=3, terms=3)
                for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        mine = set(groebner_basis(gens).lead_exps())
        want = _sympy_gb_lead_exps(gens, syms, modulus=7)
        assert mine == want
