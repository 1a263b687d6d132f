"""The degree-7 surface family and its parameter formulas.

The surface is S = P - U where P is a product of seven planes through
(0:0:0:1) arranged with sevenfold dihedral symmetry about the axis
x = y = 0, and U is a correction term built from a doubled cubic.  In
the plane y = 0 the product P degenerates into seven lines: a rational
one, x = z, and three conjugate doubled ones whose rational product
`line_product` is all the algebra downstream ever needs.

Two parameter lists are provided.  `generic_params` expresses a1..a5 as
polynomial (and one rational) expressions in a free parameter alpha;
they satisfy the slope constraint t*(a4*t^3+t)^2 + t - 1 = 0 identically
with t = 1/(1+alpha^2).  `nodal_params` is the reduced form of the same
list, valid once alpha satisfies 7*alpha^3+7*alpha+1 = 0; on that locus
the two lists agree componentwise.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import (FieldElement, NumberField, PrimeField, QQ,
                     RationalField, RationalFunctionField)
from .poly import Degrevlex, Ring

#: defining cubic of the special parameter value, low-to-high coefficients
ALPHA_CUBIC = (1, 7, 0, 7)
#: canonical display string used in every serialized report
ALPHA_CUBIC_DISPLAY = "7*alpha^3+7*alpha+1"

BAD_CHARACTERISTICS = frozenset({2, 3, 7})


class UnsupportedCharacteristicError(ValueError):
    """Characteristic 2, 3, or 7 collides with the family's coefficients."""


class ConstructionIdentityError(AssertionError):
    """A hard-coded expansion failed its internal cross-check."""


class NonInvertibleParameterError(ZeroDivisionError):
    """A parameter formula hit a vanishing denominator."""


def check_characteristic(field):
    ch = field.characteristic
    if ch in BAD_CHARACTERISTICS:
        raise UnsupportedCharacteristicError(
            f"characteristic {ch} appears in the family's own coefficients")
    return ch


def alpha_number_field():
    """QQ[alpha] modulo the defining cubic 7*alpha^3+7*alpha+1."""
    return NumberField(QQ, ALPHA_CUBIC, "alpha", display=ALPHA_CUBIC_DISPLAY)


def alpha_function_field():
    """QQ(alpha) with alpha free: the coefficient field of the generic
    one-parameter family."""
    return RationalFunctionField(QQ, "alpha")


def surface_ring(field):
    return Ring(("x", "y", "z", "w"), field, Degrevlex())


def plane_ring(field):
    return Ring(("x", "z", "w"), field, Degrevlex())


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------

class FamilyParams:
    """The tuple (a1..a7); a6 and a7 default to 1.

    Immutable; all components live in one field of characteristic
    outside {2, 3, 7}.
    """

    __slots__ = ("field", "_values", "alpha", "note")

    def __init__(self, field, values, alpha=None, note=None):
        check_characteristic(field)
        vals = []
        for v in values:
            if isinstance(v, FieldElement):
                if v.field != field:
                    raise ValueError("parameter from a different field")
                vals.append(v.value)
            elif isinstance(v, int):
                vals.append(field.from_int(v))
            elif isinstance(v, Fraction):
                vals.append(field.from_fraction(v))
            else:
                vals.append(v)
        if len(vals) == 5:
            vals += [field.one, field.one]
        if len(vals) != 7:
            raise ValueError("need 5 or 7 parameter values")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_values", tuple(vals))
        if alpha is not None and isinstance(alpha, FieldElement):
            alpha = alpha.value
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "note", note)

    def __setattr__(self, name, value):
        raise AttributeError("FamilyParams is immutable")

    def raw(self, i):
        return self._values[i - 1]

    def __getitem__(self, i):
        return FieldElement(self.field, self._values[i - 1])

    @property
    def a1(self): return self[1]
    @property
    def a2(self): return self[2]
    @property
    def a3(self): return self[3]
    @property
    def a4(self): return self[4]
    @property
    def a5(self): return self[5]
    @property
    def a6(self): return self[6]
    @property
    def a7(self): return self[7]

    def first_five(self):
        return tuple(self[i] for i in range(1, 6))

    def __eq__(self, other):
        if not isinstance(other, FamilyParams):
            return NotImplemented
        return self.field == other.field and all(
            self.field.eq(a, b) for a, b in zip(self._values, other._values))

    def __hash__(self):
        return hash((self.field, self._values))

    def __repr__(self):
        vals = ", ".join(self.field.to_str(v) for v in self._values[:5])
        return f"FamilyParams({vals})"

    def to_json_dict(self):
        d = {"field": self.field.describe(),
             "values": [_value_to_json(self.field, v) for v in self._values]}
        if self.alpha is not None:
            d["alpha"] = _value_to_json(self.field, self.alpha)
        if self.note:
            d["note"] = self.note
        return d

    @classmethod
    def from_json_dict(cls, d):
        field = _field_from_descriptor(d["field"])
        vals = [_value_from_json(field, v) for v in d["values"]]
        alpha = d.get("alpha")
        if alpha is not None:
            alpha = _value_from_json(field, alpha)
        return cls(field, vals, alpha=alpha, note=d.get("note"))


def _value_to_json(field, v):
    if isinstance(field, PrimeField):
        return v
    if isinstance(field, RationalField):
        return [v.numerator, v.denominator]
    if isinstance(field, NumberField) and isinstance(field.base, RationalField):
        return [[c.numerator, c.denominator] for c in v]
    return field.to_str(v)


def _value_from_json(field, j):
    if isinstance(field, PrimeField):
        return field.from_int(j)
    if isinstance(field, RationalField):
        return Fraction(j[0], j[1])
    if isinstance(field, NumberField) and isinstance(field.base, RationalField):
        return field._pad(tuple(Fraction(n, d) for n, d in j))
    raise ValueError("cannot deserialize values for this field")


def _field_from_descriptor(d):
    kind = d["kind"]
    if kind == "prime_field":
        return PrimeField(d["p"])
    if kind == "rational":
        return QQ
    if kind == "number_field":
        base = _field_from_descriptor(d["base"])
        if base != QQ:
            raise ValueError("only number fields over the rationals round-trip")
        return alpha_number_field()
    raise ValueError(f"unknown field descriptor {kind!r}")


# ---------------------------------------------------------------------------
# The surface and its plane restriction
# ---------------------------------------------------------------------------

def dihedral_plane_product(ring):
    """The product of the seven symmetric planes, expanded over ZZ.

    Hard-coded integer form; `plane_product` and the tests cross-check it
    against the y=0 factorization identity.
    """
    check_characteristic(ring.field)
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
    r2 = x * x + y * y
    return (x * (x**6 - 21 * x**4 * y**2 + 35 * x**2 * y**4 - 7 * y**6)
            + 7 * z * (r2**3 - 8 * z**2 * r2**2 + 16 * z**4 * r2)
            - 64 * z**7)


def correction_term(params, ring):
    """(z + a5*w) times the square of the doubled cubic."""
    check_characteristic(ring.field)
    if ring.field != params.field:
        raise ValueError("ring and parameters disagree on the field")
    x, y, z, w = (ring.var(n) for n in ("x", "y", "z", "w"))
    a = params
    cubic = (a.a1 * z**3 + a.a2 * z**2 * w + a.a3 * z * w**2 + a.a4 * w**3
             + (a.a6 * z + a.a7 * w) * (x * x + y * y))
    return (z + a.a5 * w) * cubic * cubic


def family_surface(params, ring=None):
    """S = P - U, homogeneous of degree 7 and invariant under y -> -y."""
    if ring is None:
        ring = surface_ring(params.field)
    S = dihedral_plane_product(ring) - correction_term(params, ring)
    if not S.is_homogeneous() or S.total_degree() != 7:
        raise ConstructionIdentityError("surface is not a homogeneous septic")
    return S


def plane_product(ring):
    """The y=0 restriction of the plane product: seven lines in (x, z)."""
    check_characteristic(ring.field)
    x, z = ring.var("x"), ring.var("z")
    return (x**7 + 7 * x**6 * z - 56 * x**4 * z**3 + 112 * x**2 * z**5
            - 64 * z**7)


def line_product(ring):
    """Rational product of the three conjugate doubled lines.

    Validated on construction: (x - z) * line_product^2 = 16 * plane_product.
    """
    check_characteristic(ring.field)
    x, z = ring.var("x"), ring.var("z")
    L = 4 * (x**3 + 4 * x**2 * z - 4 * x * z**2 - 8 * z**3)
    if (x - z) * L * L != 16 * plane_product(ring):
        raise ConstructionIdentityError("line product identity failed")
    return L


def plane_cubic(params, ring):
    """The doubled cubic restricted to y = 0."""
    check_characteristic(ring.field)
    x, z, w = ring.var("x"), ring.var("z"), ring.var("w")
    a = params
    return ((a.a6 * z + a.a7 * w) * x * x
            + a.a1 * z**3 + a.a2 * z**2 * w + a.a3 * z * w**2 + a.a4 * w**3)


def plane_curve(params, ring=None):
    """The plane septic: restriction of the surface to y = 0."""
    if ring is None:
        ring = plane_ring(params.field)
    z, w = ring.var("z"), ring.var("w")
    C = plane_cubic(params, ring)
    return plane_product(ring) - (z + params.a5 * w) * C * C


# ---------------------------------------------------------------------------
# Parameter formulas
# ---------------------------------------------------------------------------

def _fe(field, v):
    return v if isinstance(v, FieldElement) else FieldElement(field, v)


def generic_params(alpha):
    """Parameters of the one-parameter family, as expressions in a free
    alpha.  Requires alpha and 1 + alpha^2 invertible (a5 is the one
    rational expression: (1 + alpha^2) / alpha^2)."""
    K = alpha.field
    one = _fe(K, K.one)
    a2_ = alpha * alpha
    u = one + a2_                      # 1 + alpha^2
    if K.is_zero(u.value):
        raise NonInvertibleParameterError("1 + alpha^2 vanishes")
    if K.is_zero(alpha.value):
        raise NonInvertibleParameterError("alpha vanishes (a5 denominator)")
    a3_ = a2_ * alpha
    a5_ = a2_ * a3_
    a7_ = a2_ * a5_
    a1 = a7_ + 7 * a5_ - a2_ * a2_ + 7 * a3_ - 2 * a2_ - 7 * alpha - one
    a2 = u * (3 * a5_ + 14 * a3_ - 3 * a2_ + 7 * alpha - 3 * one)
    a3 = u * u * (3 * a3_ + 7 * alpha - 3 * one)
    a4 = (alpha * u - one) * u * u
    a5 = u / a2_
    return FamilyParams(K, [a1, a2, a3, a4, a5], alpha=alpha)


def nodal_params(alpha):
    """The reduced parameter list, valid modulo the defining cubic.

    Agrees with `generic_params` componentwise whenever alpha satisfies
    7*alpha^3+7*alpha+1 = 0; needs 7 invertible.
    """
    K = alpha.field
    if K.characteristic == 7:
        raise UnsupportedCharacteristicError("7 is not invertible")
    a2_ = alpha * alpha
    a1 = -Fraction(12, 7) * a2_ - Fraction(384, 49) * alpha - Fraction(8, 7)
    a2 = -Fraction(32, 7) * a2_ + Fraction(24, 49) * alpha - 4
    a3 = -4 * a2_ + Fraction(24, 49) * alpha - 4
    a4 = -Fraction(8, 7) * a2_ + Fraction(8, 49) * alpha - Fraction(8, 7)
    a5 = 49 * a2_ - 7 * alpha + 50
    return FamilyParams(K, [a1, a2, a3, a4, a5], alpha=alpha)


def split_line_slope(alpha):
    """Slope invariant t = 1 / (1 + alpha^2) of the split line.

    The nodal plane member is divisible by z - t*x + w, and the inverse
    map alpha_of_slope recovers alpha = a4*t^3 + t from this t."""
    K = alpha.field
    one = _fe(K, K.one)
    u = one + alpha * alpha
    if K.is_zero(u.value):
        raise NonInvertibleParameterError("1 + alpha^2 vanishes")
    return one / u


def alpha_of_slope(a4, t):
    """The invariant recovered from a split line: alpha = a4*t^3 + t."""
    return a4 * t**3 + t


def slope_constraint_residue(a4, t):
    """t*(a4*t^3+t)^2 + t - 1; zero exactly on the parametrized family."""
    K = t.field
    one = _fe(K, K.one)
    a = alpha_of_slope(a4, t)
    return t * a * a + t - one


def orbit_lift(plane_nodes, axis_nodes):
    """Surface node count from plane counts through the sevenfold symmetry:
    off-axis plane nodes come in orbits of 7, axis nodes are fixed."""
    if not (0 <= axis_nodes <= plane_nodes):
        raise ValueError("axis count must lie between 0 and the plane count")
    return axis_nodes + 7 * (plane_nodes - axis_nodes)


def minpoly_roots_mod_p(p):
    """Residues r with 7r^3 + 7r + 1 = 0 mod p, ascending.

    Pure residue scan; callers picking a construction field must still
    reject the bad characteristics themselves.
    """
    if p < 2:
        raise ValueError("modulus must be at least 2")
    return [r for r in range(p) if (7 * r * r * r + 7 * r + 1) % p == 0]


# Known maximal prime-field examples, one row per
# (p, (a1..a5), alpha, t): parameters of a 15-node plane member over
# F_p, the recovered invariant alpha = a4*t^3 + t, and the slope t of
# the split line z - t*x + w, all as symmetric representatives.
# Every row equals nodal_params(alpha) on the nose and every alpha is a
# root of 7a^3+7a+1 mod p.
KNOWN_NODAL_EXAMPLES = (
    (11, (2, 3, 5, 2, -5), -3, -1),
    (19, (-7, -2, 7, 1, 8), 7, 8),
    (19, (2, 0, 1, 9, 7), -4, 9),
    (19, (5, -9, 7, -3, -1), -3, 2),
    (23, (-5, 11, 10, 1, 7), -2, -9),
    (31, (-15, -13, -5, 13, -10), -13, -2),
    (31, (1, -2, 14, -9, 11), -11, 15),
    (31, (14, -10, -13, -14, -11), -7, -13),
    (43, (-11, 15, 0, -13, -6), 7, -6),
    (43, (20, 16, -1, -14, 10), 14, -12),
    (43, (-9, 3, -3, -11, 5), -21, 18),
    (53, (-8, 20, 14, 18, 11), 4, 25),
    (53, (-2, -10, -14, -26, 16), 24, -9),
    (53, (10, 25, -4, 22, 25), 25, -16),
)


def weight_rescale(params, lam):
    """The w-scaling action on parameters: (a1, l*a2, l^2*a3, l^3*a4,
    l*a5, a6, l*a7)."""
    K = params.field
    lam = _fe(K, lam if not isinstance(lam, int) else K.from_int(lam))
    if K.is_zero(lam.value):
        raise ValueError("rescaling by zero")
    a = params
    return FamilyParams(K, [a.a1, lam * a.a2, lam**2 * a.a3, lam**3 * a.a4,
                            lam * a.a5, a.a6, lam * a.a7],
                        alpha=params.alpha, note=params.note)


def weight_equivalent(p1, p2):
    """Whether two parameter tuples differ by the w-scaling action."""
    if p1.field != p2.field:
        return False
    K = p1.field
    if isinstance(K, PrimeField):
        return any(weight_rescale(p1, K(l)) == p2 for l in range(1, K.p))
    # characteristic 0: the first position of weight 1 determines lambda
    for i, wt in ((2, 1), (3, 2), (4, 3), (5, 1), (7, 1)):
        if not K.is_zero(p1[i].value):
            if K.is_zero(p2[i].value):
                return False
            ratio = p2[i] / p1[i]
            lam = ratio if wt == 1 else None
            if lam is None:
                continue
            return weight_rescale(p1, lam) == p2
    return p1 == p2
