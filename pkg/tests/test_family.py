"""Surface family construction and its parameter conventions."""

import pytest

import kernel_props as kp
from septiq.family import (
    BAD_CHARACTERISTICS,
    KNOWN_NODAL_EXAMPLES,
    FamilyParams,
    UnsupportedCharacteristicError,
    alpha_function_field,
    alpha_number_field,
    alpha_of_slope,
    check_characteristic,
    family_surface,
    generic_params,
    minpoly_roots_mod_p,
    nodal_params,
    slope_constraint_residue,
    split_line_slope,
    weight_equivalent,
    weight_rescale,
)
from septiq.fields import PrimeField, QQ
from septiq.search import balanced


def test_surface_homogeneous_and_even_in_y():
    Fp = PrimeField(11)
    params = FamilyParams(Fp, (2, 3, 5, 2, -5))
    S = family_surface(params)
    assert S.is_homogeneous()
    assert S.total_degree() == 7
    R = S.ring
    y = R.var("y")
    assert S.substitute({"y": -y}) == S


def test_line_product_identity():
    kp.line_product_identity()


def test_weight_identity(rng):
    kp.weight_identity(rng)


def test_generic_specializes_to_nodal():
    K = alpha_number_field()
    a = K.gen
    g = generic_params(a)
    n = nodal_params(a)
    for i in range(7):
        assert K.eq(g[i].value, n[i].value), f"component {i} differs"
    # closed forms for the last free coefficient agree modulo the cubic
    lhs = (1 + a * a) / (a * a)
    rhs = 49 * a * a - 7 * a + 50
    assert K.eq(lhs.value, rhs.value)


def test_weight_action_orbit():
    Fp = PrimeField(31)
    base = FamilyParams(Fp, (2, 3, 5, 2, -5))
    scaled = weight_rescale(base, Fp(4))
    assert weight_equivalent(base, scaled)
    bumped = FamilyParams(Fp, (2, 3, 5, 2, -4))
    assert not weight_equivalent(base, bumped)


def test_minpoly_roots_match_brute_force():
    for p in (5, 11, 13, 17, 23, 31991):
        got = sorted(minpoly_roots_mod_p(p))
        want = sorted(a for a in range(p) if (7 * a**3 + 7 * a + 1) % p == 0)
        assert got == want, f"p={p}"


def test_known_rows_are_nodal_specializations():
    assert len(KNOWN_NODAL_EXAMPLES) == 14
    for p, tup, alpha, t in KNOWN_NODAL_EXAMPLES:
        Fp = PrimeField(p)
        assert (7 * alpha**3 + 7 * alpha + 1) % p == 0
        params = nodal_params(Fp(alpha))
        got = tuple(balanced(v.value, p) for v in params.first_five())
        assert got == tup, f"p={p}: {got} != {tup}"
        assert balanced(split_line_slope(Fp(alpha)).value, p) == t


def test_bad_characteristics_rejected():
    assert BAD_CHARACTERISTICS == frozenset({2, 3, 7})
    for p in (2, 3, 7):
        with pytest.raises(UnsupportedCharacteristicError):
            FamilyParams(PrimeField(p), (1, 1, 1, 1, 1))
    with pytest.raises(UnsupportedCharacteristicError):
        check_characteristic(PrimeField(7))


def test_params_json_round_trip():
    Fp = PrimeField(11)
    params = nodal_params(Fp(8))
    back = FamilyParams.from_json_dict(params.to_json_dict())
    assert back == params
    assert back.alpha == params.alpha

    K = alpha_number_field()
    exact = nodal_params(K.gen)
    back = FamilyParams.from_json_dict(exact.to_json_dict())
    assert all(back[i] == exact[i] for i in range(7))


def test_slope_parametrization_round_trip():
    K = alpha_number_field()
    a = K.gen
    t = split_line_slope(a)
    a4 = nodal_params(a).a4
    assert K.is_zero(slope_constraint_residue(a4, t).value)
    assert K.eq(alpha_of_slope(a4, t).value, a.value)
    # same invariants in a prime specialization
    Fp = PrimeField(11)
    tp = split_line_slope(Fp(-3))
    a4p = nodal_params(Fp(-3)).a4
    assert Fp.is_zero(slope_constraint_residue(a4p, tp).value)


def test_generic_params_over_function_field():
    A = alpha_function_field()
    g = generic_params(A.gen)
    lhs = (1 + A.gen * A.gen) / (A.gen * A.gen)
    assert g.a5 == lhs
