"""Characteristic-zero derivation of the defining parameter condition.

Generically the plane member of the family has nine singular points,
cut out by the doubled cubic of the correction term against the three
doubled lines of the base product.  Working over the rational function
field in the parameter, this module splits the known line off that
incidence ideal to isolate a conic through six of the points, follows
the conic onto the axis x=0 where a square root beta enters, builds the
companion symmetric conic for either sign of beta, and expresses the
requirement that the companion meets the doubled lines inside the same
six points as the vanishing of a division remainder.  Clearing beta and
denominators from the remainder's quadratic coefficient leaves a single
rational condition whose distinguished cubic factor is exactly the
defining relation of the nodal family; every bundled prime-field
example satisfies it.

The absolute degree of the cleared condition depends on how much
common content the two components carry before clearing.  This module
reduces fractions fully, which puts the components at degrees 67 and
64 and the condition at degree 134; conventions that keep a common
degree-8 factor in the components report 150 instead.  Both versions
share the same factor set up to that content, so the divisibility and
vanishing checks are unaffected.  The 150 figure is kept as the
contract value and the mismatch is surfaced as a checked error rather
than silently repaired; see derive_cond.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import univar
from .family import (
    ALPHA_CUBIC,
    ALPHA_CUBIC_DISPLAY,
    KNOWN_NODAL_EXAMPLES,
    alpha_function_field,
    generic_params,
    line_product,
    plane_cubic,
    split_line_slope,
)
from .fields import QQ, FieldElement, PrimeField, QuadraticExtField
from .groebner import groebner_basis, eliminate, ideal_quotient, normal_form
from .poly import (
    Block,
    Degrevlex,
    ExactDivisionError,
    Ring,
    divide_univariate,
    exact_divide,
    resultant,
)

# closed form of beta^2 = 16a(2a^5+4a^3-a^2+2a-1), low to high degree
BETA2_COEFFS = (Fraction(0), Fraction(-16), Fraction(32), Fraction(-16),
                Fraction(64), Fraction(0), Fraction(32))

# contract degree for the cleared condition; the fully reduced
# computation yields REDUCED_COND_DEGREE (see the module docstring)
COND_DEGREE_CONTRACT = 150
REDUCED_COND_DEGREE = 134

_MINPOLY = tuple(Fraction(c) for c in ALPHA_CUBIC)


class DerivationMismatchError(RuntimeError):
    """A derived object disagrees with its expected shape.

    When the disagreement is the condition-degree contract check, the
    finished AlphaCondition is attached as the ``condition`` attribute
    so reporting callers can still inspect every other verified fact.
    """

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class DegenerateDenominatorError(ZeroDivisionError):
    """A branch point hit a pole of the conic parametrization."""


def generic_plane_ring(K=None):
    K = K or alpha_function_field()
    return Ring(("x", "z", "w"), K, Degrevlex())


def generic_singular_ideal(ring=None):
    """Generators (doubled cubic, product of the three lines) of the
    ideal cutting the nine generic plane singular points, over the
    rational function field."""
    R = ring or generic_plane_ring()
    params = generic_params(R.field.gen)
    return [plane_cubic(params, R), line_product(R)]


def reference_conic(ring, alpha):
    """The six-point conic in closed form, over any field of the
    parameter: a*x^2 + (a^3+5a-1)xz + (a^3+a-1)xw + (a^5+6a^3-a^2+a-1)z^2
    + (2a^5+8a^3-2a^2+6a-2)zw + (a^5+2a^3-a^2+a-1)w^2."""
    x, z, w = ring.var("x"), ring.var("z"), ring.var("w")
    a = alpha
    a2 = a * a
    a3 = a2 * a
    a5 = a3 * a2
    one = a / a
    return (a * x**2
            + (a3 + 5 * a - one) * x * z
            + (a3 + a - one) * x * w
            + (a5 + 6 * a3 - a2 + a - one) * z**2
            + (2 * a5 + 8 * a3 - 2 * a2 + 6 * a - 2 * one) * z * w
            + (a5 + 2 * a3 - a2 + a - one) * w**2)


@dataclass
class ConicC0:
    ring: object
    poly: object          # normalized: x^2 coefficient equals alpha
    basis_degrees: tuple

    def axis_coefficients(self):
        """(A, B, C) with the x=0 restriction A z^2 + B zw + C w^2,
        as raw field values."""
        K = self.ring.field
        t = self.poly.terms
        return (t.get((0, 2, 0), K.zero),
                t.get((0, 1, 1), K.zero),
                t.get((0, 0, 2), K.zero))


def derive_C0(budget=None):
    """Quotient the generic singular ideal by the split line and read
    off the unique degree-2 element of the reduced basis, normalized so
    its x^2 coefficient is the parameter itself.  Hard-fails unless the
    result equals the closed-form conic."""
    R = generic_plane_ring()
    K = R.field
    alpha = K.gen
    t = split_line_slope(alpha)
    x, z, w = R.var("x"), R.var("z"), R.var("w")
    line = z - t * x + w
    quot = ideal_quotient(generic_singular_ideal(R), line, budget=budget)
    gb = groebner_basis(quot, budget=budget)
    deg2 = [p for p in gb.polys if p.total_degree() == 2]
    if len(deg2) != 1:
        raise DerivationMismatchError(
            f"expected exactly one conic in the residual basis, found "
            f"{len(deg2)} among degrees {[p.total_degree() for p in gb.polys]}")
    conic = deg2[0]
    lead = conic.terms.get((2, 0, 0))
    if lead is None:
        raise DerivationMismatchError("residual conic has no x^2 term")
    conic = conic * (alpha / FieldElement(K, lead))
    if not (conic - reference_conic(R, alpha)).is_zero():
        raise DerivationMismatchError(
            "residual conic disagrees with the closed form")
    return ConicC0(R, conic, tuple(p.total_degree() for p in gb.polys))


def beta_squared(c0=None, budget=None):
    """Discriminant B^2 - 4AC of the conic's x=0 restriction, returned
    as a polynomial (coefficient tuple, low to high) over the rationals.
    Hard-checked against the closed form and returned together with its
    reduction modulo the defining cubic (the constant 144/49)."""
    c0 = c0 or derive_C0(budget=budget)
    K = c0.ring.field
    A, B, C = c0.axis_coefficients()
    disc = K.sub(K.mul(B, B), K.mul(K.from_int(4), K.mul(A, C)))
    num, den = disc
    if univar.degree(den) != 0:
        raise DerivationMismatchError("discriminant is not polynomial")
    beta2 = univar.scale(QQ, num, QQ.inv(den[0]))
    if tuple(beta2) != tuple(univar.normalize(BETA2_COEFFS, QQ)):
        raise DerivationMismatchError(
            f"discriminant {beta2} differs from the closed form")
    _, rem = univar.divmod_(QQ, beta2, _MINPOLY)
    return beta2, rem


@dataclass
class ConicC1:
    sign: int
    ring: object          # over the quadratic extension by beta
    poly: object
    k: object             # raw field value
    P_z: object           # raw field value: branch point z-coordinate


def _beta_field():
    K = alpha_function_field()
    square = K.make([Fraction(c) for c in BETA2_COEFFS], [Fraction(1)])
    return QuadraticExtField(K, square)


def build_C1(sign, c0=None, budget=None):
    """Symmetric companion conic x^2 + k z^2 + (k+4) zw for one choice
    of branch point P^sign on x=0, with k = -4P_z / (P_z (P_z + 1))."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c0 = c0 or derive_C0(budget=budget)
    K2 = _beta_field()
    K = K2.base
    beta = K2.gen
    A, B, _ = c0.axis_coefficients()
    Ax = FieldElement(K2, K2.from_base(A))
    Bx = FieldElement(K2, K2.from_base(B))
    P = (-Bx + sign * beta) / (2 * Ax)
    if K2.is_zero(P.value):
        raise DegenerateDenominatorError("branch point at the origin")
    one = FieldElement(K2, K2.one)
    if K2.is_zero((P + one).value):
        raise DegenerateDenominatorError("branch point at z = -w")
    k = (-4 * P) / (P * (P + one))
    # template checks: passes through (0:0:1), even in x, and its x=0
    # restriction vanishes at the branch point
    if not K2.is_zero((k * P * P + (k + 4 * one) * P).value):
        raise DerivationMismatchError(
            "companion conic misses its defining branch point")
    R2 = Ring(("x", "z", "w"), K2, Degrevlex())
    x, z, w = R2.var("x"), R2.var("z"), R2.var("w")
    poly = x**2 + k * z**2 + (k + 4 * one) * z * w
    return ConicC1(sign, R2, poly, k.value, P.value)


def _cleared_components(K2, value):
    """Write u + beta*v over common denominator: returns (c, d) tuples
    of rationals with value = (c + beta d) / lcm(den_u, den_v)."""
    (un, ud), (vn, vd) = value
    g = univar.qq_gcd(ud, vd)
    cu, _ = univar.divmod_(QQ, vd, g)
    cv, _ = univar.divmod_(QQ, ud, g)
    c = univar.mul(QQ, un, cu)
    d = univar.mul(QQ, vn, cv)
    return tuple(c), tuple(d)


def _eval_mod_p(coeffs, a0, p):
    """Evaluate a rational-coefficient polynomial at an integer, modulo
    p; every denominator must be a unit mod p."""
    acc = 0
    for c in reversed(coeffs):
        den = c.denominator % p
        if den == 0:
            raise ZeroDivisionError(f"denominator not a unit mod {p}")
        acc = (acc * a0 + c.numerator * pow(den, -1, p)) % p
    return acc


@dataclass
class AlphaCondition:
    cond: tuple           # rational coefficients, low to high
    c: tuple
    d: tuple
    degree: int
    divisible: bool       # by the defining cubic
    cofactor: tuple
    sign_results: dict    # per sign: z^3 exactness, q data
    other_coefficients_divisible: tuple
    row_checks: list

    @property
    def degree_matches_contract(self):
        return self.degree == COND_DEGREE_CONTRACT

    def to_json_dict(self):
        return {
            "degree": self.degree,
            "contract_degree": COND_DEGREE_CONTRACT,
            "degree_matches_contract": self.degree_matches_contract,
            "c_degree": univar.degree(self.c),
            "d_degree": univar.degree(self.d),
            "divisible_by_minimal_polynomial": self.divisible,
            "cofactor_degree": univar.degree(self.cofactor),
            "sign_results": self.sign_results,
            "other_coefficients_divisible":
                list(self.other_coefficients_divisible),
            "row_checks": self.row_checks,
        }


def derive_cond(c0=None, budget=None, check_degree=True):
    """Run the resultant division for both branch signs and assemble
    the parameter condition from the remainder's quadratic coefficient.

    Both signs must agree on the final condition (they are conjugate);
    the division by the cube of z, the divisibility by the defining
    cubic, and the vanishing at every bundled prime-field example are
    hard checks and all pass.

    The final gate compares the condition's degree against
    COND_DEGREE_CONTRACT.  The fully reduced computation gives
    REDUCED_COND_DEGREE, so with check_degree=True (the default) this
    raises DerivationMismatchError after all other checks succeed; the
    finished AlphaCondition rides along on the error's ``condition``
    attribute.  Pass check_degree=False to get the object directly.
    """
    c0 = c0 or derive_C0(budget=budget)
    K = c0.ring.field
    L = line_product(c0.ring)
    r0 = resultant(c0.poly, L, "x")

    sign_results = {}
    per_sign = {}
    for sign in (1, -1):
        tag = "+" if sign == 1 else "-"
        c1 = build_C1(sign, c0=c0, budget=budget)
        K2 = c1.ring.field
        L2 = L.map_to(c1.ring, coeff_map=lambda c: K2.from_base(c))
        r1 = resultant(c1.poly, L2, "x")
        z = c1.ring.var("z")
        try:
            r1s = exact_divide(r1, z**3)
        except ExactDivisionError:
            sign_results[tag] = {"z3_division_exact": False}
            continue
        r0e = r0.map_to(c1.ring, coeff_map=lambda c: K2.from_base(c))
        one = c1.ring.one
        f = r0e.substitute({"w": one})
        g = r1s.substitute({"w": one})
        _, q = divide_univariate(f, g, "z")
        if q.degree_in("z") > 2:
            raise DerivationMismatchError("remainder degree exceeds 2")
        qc = []
        for i in range(3):
            cs = q.coeffs_in("z")
            v = cs[i].lc_raw() if i < len(cs) and not cs[i].is_zero() \
                else K2.zero
            qc.append(v)
        sign_results[tag] = {"z3_division_exact": True,
                             "remainder_degree": q.degree_in("z")}
        per_sign[sign] = qc
    if not per_sign:
        raise DerivationMismatchError(
            "no branch sign admitted the cube-of-z division")

    K2 = _beta_field()
    conds = {}
    others = {}
    for sign, qc in per_sign.items():
        c, d = _cleared_components(K2, qc[2])
        c2 = univar.mul(QQ, c, c)
        d2 = univar.mul(QQ, d, d)
        cond = univar.sub(QQ, c2,
                          univar.mul(QQ, list(BETA2_COEFFS), d2))
        conds[sign] = (tuple(cond), c, d)
        per_coeff = []
        for i in (1, 0):
            ci, di = _cleared_components(K2, qc[i])
            condi = univar.sub(
                QQ, univar.mul(QQ, ci, ci),
                univar.mul(QQ, list(BETA2_COEFFS), univar.mul(QQ, di, di)))
            _, rem = univar.divmod_(QQ, condi, _MINPOLY)
            per_coeff.append(univar.degree(rem) < 0)
        others[sign] = tuple(reversed(per_coeff))

    if len(conds) == 2 and conds[1][0] != conds[-1][0]:
        raise DerivationMismatchError("branch signs disagree on cond")
    sign = 1 if 1 in conds else -1
    cond, c, d = conds[sign]

    deg = univar.degree(cond)
    cofactor, rem = univar.divmod_(QQ, list(cond), _MINPOLY)
    divisible = univar.degree(rem) < 0
    if not divisible:
        raise DerivationMismatchError(
            "cond is not divisible by the defining cubic")

    row_checks = []
    for p, _, alpha0, _ in KNOWN_NODAL_EXAMPLES:
        cv = _eval_mod_p(cond, alpha0 % p, p)
        cof = _eval_mod_p(cofactor, alpha0 % p, p)
        row_checks.append({"p": p, "alpha": alpha0, "cond_mod_p": cv,
                           "cofactor_mod_p": cof})
    if any(r["cond_mod_p"] != 0 for r in row_checks):
        raise DerivationMismatchError(
            "cond fails to vanish at a known example")
    if not any(r["cofactor_mod_p"] != 0 for r in row_checks):
        raise DerivationMismatchError(
            "cofactor vanishes at every known example; the cubic factor "
            "is not distinguished")

    result = AlphaCondition(tuple(cond), tuple(c), tuple(d), deg,
                            divisible, tuple(cofactor), sign_results,
                            others[sign], row_checks)
    if check_degree and deg != COND_DEGREE_CONTRACT:
        raise DerivationMismatchError(
            f"cond has degree {deg}, contract says "
            f"{COND_DEGREE_CONTRACT}; the fully reduced components "
            f"carry no common content (every other check passed)",
            condition=result)
    return result


def verify_slope_parametrization():
    """Identity checks over the function field: with t = 1/(1+a^2) and
    the generic a4, the recovered invariant a4 t^3 + t is the parameter
    itself and t (a4 t^3 + t)^2 + t - 1 vanishes identically."""
    K = alpha_function_field()
    alpha = K.gen
    params = generic_params(alpha)
    t = split_line_slope(alpha)
    from .family import alpha_of_slope, slope_constraint_residue
    recovered = alpha_of_slope(params.a4, t)
    residue = slope_constraint_residue(params.a4, t)
    return {"alpha_recovered": (recovered - alpha).value == K.zero,
            "constraint_identity": K.is_zero(residue.value)}


def _alpha_polynomial(ring, coeffs):
    a = ring.var("alpha")
    acc = ring.zero
    for i, c in enumerate(coeffs):
        if c:
            acc = acc + FieldElement(QQ, Fraction(c)) * a**i
    return acc


def _slope_incidence_generators(field):
    """The eight coefficient conditions for the line z = t*x - w to
    divide the plane member with free parameters, as polynomials in the
    ring (t, a1..a5)."""
    R = Ring(("x", "z", "w", "t", "a1", "a2", "a3", "a4", "a5"), field,
             Degrevlex())
    x, z, w, t = (R.var(n) for n in ("x", "z", "w", "t"))
    p1, p2, p3, p4, p5 = (R.var(f"a{i}") for i in range(1, 6))
    P = (x**7 + 7 * x**6 * z - 56 * x**4 * z**3
         + 112 * x**2 * z**5 - 64 * z**7)
    C = ((z + w) * x**2 + p1 * z**3 + p2 * z**2 * w + p3 * z * w**2
         + p4 * w**3)
    F = P - (z + p5 * w) * C * C
    sub = F.substitute({"z": t * x - w})
    R6 = Ring(("t", "a1", "a2", "a3", "a4", "a5"), field, Degrevlex())
    groups = {}
    for e, cval in sub.terms.items():
        groups.setdefault((e[0], e[2]), {})[e[3:]] = cval
    return [R6.poly(g) for g in groups.values()]


def reproduce_slope_condition(primes=(31991, 32003), budget=500000):
    """Black-box rerun of the elimination behind the slope relation.

    Every parameter is treated as a free variable: substituting
    z = t*x - w into the generic plane member and requiring each of the
    eight coefficients to vanish gives an ideal in (t, a1..a5), and a
    block-order basis eliminating a1, a2, a3, a5 leaves the relation
    between t and a4 alone.  Rational coefficients swell far beyond
    what the Buchberger loop here can absorb (the same run over the
    rationals does not finish), so the rerun happens over large prime
    fields instead: over each one the elimination ideal comes out
    principal and its monic generator must equal the slope relation
    t*(a4*t^3+t)^2 + t - 1 reduced mod p.  The characteristic-zero
    certificate for the containment direction is the exact substitution
    identity checked by verify_slope_parametrization.
    """
    out = {"schema": 1, "kind": "slope-elimination", "primes": [],
           "eliminant": "t*(a4*t^3+t)^2 + t - 1"}
    for p in primes:
        field = PrimeField(p)
        gens = _slope_incidence_generators(field)
        elim = eliminate(gens, ["a1", "a2", "a3", "a5"], budget=budget)
        polys = [g.monic() for g in elim if not g.is_zero()]
        if not polys:
            raise DerivationMismatchError(
                f"elimination mod {p} returned no generator in (t, a4)")
        R6 = polys[0].ring
        t, a4 = R6.var("t"), R6.var("a4")
        relation = (t * (a4 * t**3 + t) ** 2 + t - R6.one).monic()
        for g in polys:
            if normal_form(g, [relation]).is_zero():
                continue
            raise DerivationMismatchError(
                f"eliminant mod {p} is not a multiple of the slope "
                f"relation: {g.to_str()}")
        out["primes"].append({"p": p, "generators": len(polys),
                              "principal": len(polys) == 1,
                              "matches_slope_relation":
                                  polys[0] == relation})
    out["all_match"] = all(row["matches_slope_relation"]
                           for row in out["primes"])
    if not out["all_match"]:
        raise DerivationMismatchError(
            "slope eliminant differs from the published relation")
    return out


def derivation_transcript(budget=None, include_elimination=False):
    """Full derivation with every checkpoint recorded, as one JSON-able
    dictionary for audit diffing."""
    c0 = derive_C0(budget=budget)
    beta2, beta2_reduced = beta_squared(c0)
    K = c0.ring.field
    out = {
        "schema": 1,
        "kind": "derivation-transcript",
        "minimal_polynomial": ALPHA_CUBIC_DISPLAY,
        "conic": c0.poly.to_str(),
        "residual_basis_degrees": list(c0.basis_degrees),
        "beta_squared": list(map(str, beta2)),
        "beta_squared_reduced": [str(c) for c in beta2_reduced],
        "slope_parametrization": verify_slope_parametrization(),
    }
    ks = {}
    for sign in (1, -1):
        c1 = build_C1(sign, c0=c0)
        ks["+" if sign == 1 else "-"] = c1.ring.field.to_str(c1.k)
    out["k_values"] = ks
    ac = derive_cond(c0=c0, budget=budget, check_degree=False)
    out["condition"] = ac.to_json_dict()
    if include_elimination:
        out["slope_elimination"] = reproduce_slope_condition()
    return out
