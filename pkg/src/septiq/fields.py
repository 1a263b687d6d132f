"""Exact coefficient fields under one arithmetic interface.

Five constructions cover every computation in the package: the rationals,
prime fields, a number field given by a modulus polynomial, rational
functions in one symbol, and a quadratic extension by a formal square
root.  A field object performs arithmetic on raw values (Fraction, int,
tuple); `FieldElement` is a thin operator-overloading wrapper used at API
boundaries.  Raw values are kept canonical so equality is plain `==`.

Polynomial-level code (Buchberger in particular) calls `strip_content` to
rescale a whole coefficient list by one unit, which is what keeps
rational and number-field coefficients from swelling mid-reduction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from . import univar


class FieldMismatchError(ValueError):
    """Mixed operands from two different field instances."""


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"operands from {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(v, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        K = self.field
        if n < 0:
            base = K.inv(self.value)
            n = -n
        else:
            base = self.value
        acc = K.one
        while n:
            if n & 1:
                acc = K.mul(acc, base)
            base = K.mul(base, base)
            n >>= 1
        return FieldElement(K, acc)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            v = self._coerce(other)
            return self.value == v
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __repr__(self):
        return self.field.to_str(self.value)


class Field:
    """Shared behavior; concrete fields define add/mul/neg/inv and friends."""

    char = 0

    def __call__(self, v):
        if isinstance(v, FieldElement):
            if v.field != self:
                raise FieldMismatchError(f"value from {v.field}, wanted {self}")
            return v
        if isinstance(v, int):
            return FieldElement(self, self.from_int(v))
        if isinstance(v, Fraction):
            return FieldElement(self, self.from_fraction(v))
        return FieldElement(self, v)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == self.zero

    def from_fraction(self, q):
        num = self.from_int(q.numerator)
        if q.denominator == 1:
            return num
        return self.div(num, self.from_int(q.denominator))

    def content_multiplier(self, values):
        """A unit u such that [u*v for v in values] has tamed coefficients."""
        return self.one

    def strip_content(self, values):
        u = self.content_multiplier(values)
        if self.eq(u, self.one):
            return list(values)
        return [self.mul(u, v) for v in values]

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))


class RationalField(Field):
    characteristic = 0

    """The rationals with Fraction values."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return q

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def is_zero(self, a):
        return not a

    def content_multiplier(self, values):
        den = 1
        num = 0
        for v in values:
            den = den * v.denominator // int_gcd(den, v.denominator)
            num = int_gcd(num, v.numerator)
        if num == 0:
            return self.one
        return Fraction(den, num)

    def to_str(self, a):
        return str(a)

    def random_element(self, rng, size=10):
        return Fraction(rng.randint(-size, size), rng.randint(1, size))

    def describe(self):
        return {"kind": "rational"}

    def _key(self):
        return ()

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField(Field):
    """Integers mod a prime, values in [0, p)."""

    def __init__(self, p):
        if p < 2 or not univar._is_probable_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 mod {self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def to_str(self, a):
        # balanced representative, matching how search results read best
        a %= self.p
        if a > self.p // 2:
            a -= self.p
        return str(a)

    def random_element(self, rng, size=None):
        return rng.randrange(self.p)

    def describe(self):
        return {"kind": "prime_field", "p": self.p}

    def _key(self):
        return (self.p,)

    def __repr__(self):
        return f"GF({self.p})"


def _upoly_str(base, coeffs, varname):
    """Render a univariate coefficient tuple, highest degree first."""
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if base.is_zero(c):
            continue
        cs = base.to_str(c)
        if i == 0:
            term = cs
        else:
            mono = varname if i == 1 else f"{varname}^{i}"
            if cs == "1":
                term = mono
            elif cs == "-1":
                term = f"-{mono}"
            else:
                if any(ch in cs[1:] for ch in "+-"):
                    cs = f"({cs})"
                term = f"{cs}*{mono}"
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts) if parts else "0"


class NumberField(Field):
    """base[x]/(m(x)) with the modulus rescaled monic internally.

    Values are coefficient tuples of fixed length deg(m).  The preferred
    display string of the modulus (for reports) may keep a non-monic
    integer form even though arithmetic reduces by the monic rescaling.
    """

    @property
    def characteristic(self):
        return self.base.characteristic

    def __init__(self, base, modulus, varname="alpha", display=None):
        coerced = []
        for c in modulus:
            if isinstance(c, int):
                c = base.from_int(c)
            elif isinstance(c, Fraction):
                c = base.from_fraction(c)
            coerced.append(c)
        modulus = univar.normalize(coerced, base)
        if univar.degree(modulus) < 2:
            raise ValueError("modulus must have degree at least 2")
        self.base = base
        self.varname = varname
        self.char = base.char
        self.modulus_raw = modulus
        self.modulus = univar.monic(base, modulus)
        self.degree = univar.degree(self.modulus)
        self.display = display or _upoly_str(base, modulus, varname)
        d = self.degree
        self.zero = (base.zero,) * d
        self.one = ((base.one,) + (base.zero,) * (d - 1))
        # x^k reduced, for k = d .. 2d-2
        table = []
        cur = tuple(base.neg(c) for c in self.modulus[:d])
        table.append(cur)
        for _ in range(d - 2):
            shifted = (base.zero,) + cur
            top = shifted[d] if len(shifted) > d else base.zero
            red = list(shifted[:d])
            if not base.is_zero(top):
                for i, t in enumerate(table[0]):
                    red[i] = base.add(red[i], base.mul(top, t))
            cur = tuple(red)
            table.append(cur)
        self._pow_table = table
        g = [base.zero] * d
        if d > 1:
            g[1] = base.one
        self.gen = FieldElement(self, tuple(g))

    def _pad(self, coeffs):
        cs = tuple(coeffs)[: self.degree]
        return cs + (self.base.zero,) * (self.degree - len(cs))

    def from_base(self, b):
        return self._pad((b,))

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def from_base_poly(self, coeffs):
        """Reduce an arbitrary-degree coefficient sequence into the field."""
        gen = self.gen.value
        acc = self.zero
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, gen), self.from_base(c))
        return acc

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        d = self.degree
        prod = [B.zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if B.is_zero(x):
                continue
            for j, y in enumerate(b):
                prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if B.is_zero(c):
                continue
            for i, t in enumerate(self._pow_table[k - d]):
                out[i] = B.add(out[i], B.mul(c, t))
        return tuple(out)

    def inv(self, a):
        B = self.base
        av = univar.normalize(a, B)
        if not av:
            raise ZeroDivisionError("inverse of 0 in number field")
        g, u, _ = univar.ext_gcd(B, av, self.modulus)
        if univar.degree(g) != 0:
            raise ZeroDivisionError("element not invertible (reducible modulus)")
        return self._pad(u)

    def is_zero(self, a):
        B = self.base
        return all(B.is_zero(c) for c in a)

    def content_multiplier(self, values):
        flat = [c for v in values for c in v]
        u = self.base.content_multiplier(flat)
        return self.from_base(u)

    def to_str(self, a):
        return _upoly_str(self.base, univar.normalize(a, self.base), self.varname)

    def random_element(self, rng, size=10):
        return tuple(self.base.random_element(rng, size) for _ in range(self.degree))

    def describe(self):
        return {"kind": "number_field", "base": self.base.describe(),
                "modulus": self.display, "symbol": self.varname}

    def _key(self):
        return (self.base, self.modulus, self.varname)

    def __repr__(self):
        return f"{self.base}[{self.varname}]/({self.display})"


class RationalFunctionField(Field):
    """Fractions of univariate polynomials over a base field.

    Values are (numerator, denominator) coefficient-tuple pairs with
    gcd 1 and monic denominator, so equality stays syntactic.
    """

    @property
    def characteristic(self):
        return self.base.characteristic

    def __init__(self, base, varname="alpha"):
        self.base = base
        self.varname = varname
        self.char = base.char
        self.zero = ((), (base.one,))
        self.one = ((base.one,), (base.one,))
        g = ((base.zero, base.one), (base.one,))
        self.gen = FieldElement(self, g)

    def _gcd(self, f, g):
        if isinstance(self.base, RationalField):
            return univar.qq_gcd(f, g)
        return univar.gcd_monic(self.base, f, g)

    def make(self, num, den):
        B = self.base
        num = univar.normalize(num, B)
        den = univar.normalize(den, B)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return ((), (B.one,))
        g = self._gcd(num, den)
        if univar.degree(g) > 0:
            num, _ = univar.divmod_(B, num, g)
            den, _ = univar.divmod_(B, den, g)
        lc = den[-1]
        if not B.eq(lc, B.one):
            ilc = B.inv(lc)
            num = univar.scale(B, num, ilc)
            den = univar.scale(B, den, ilc)
        return (num, den)

    def from_poly(self, coeffs):
        return self.make(coeffs, (self.base.one,))

    def from_int(self, n):
        return self.from_poly((self.base.from_int(n),))

    def add(self, a, b):
        B = self.base
        n1, d1 = a
        n2, d2 = b
        if d1 == d2:
            return self.make(univar.add(B, n1, n2), d1)
        num = univar.add(B, univar.mul(B, n1, d2), univar.mul(B, n2, d1))
        return self.make(num, univar.mul(B, d1, d2))

    def neg(self, a):
        return (univar.neg(self.base, a[0]), a[1])

    def mul(self, a, b):
        B = self.base
        n1, d1 = a
        n2, d2 = b
        if not n1 or not n2:
            return self.zero
        return self.make(univar.mul(B, n1, n2), univar.mul(B, d1, d2))

    def inv(self, a):
        num, den = a
        if not num:
            raise ZeroDivisionError("inverse of 0 rational function")
        return self.make(den, num)

    def is_zero(self, a):
        return not a[0]

    def content_multiplier(self, values):
        # multiply through by the lcm of denominators over the gcd of
        # numerators, leaving mostly-polynomial entries
        B = self.base
        den_lcm = (B.one,)
        num_gcd = ()
        for num, den in values:
            g = self._gcd(den_lcm, den)
            quo, _ = univar.divmod_(B, den, g)
            den_lcm = univar.mul(B, den_lcm, quo)
            num_gcd = self._gcd(num_gcd, num)
        if not num_gcd:
            return self.one
        return self.make(den_lcm, num_gcd)

    def to_str(self, a):
        num, den = a
        ns = _upoly_str(self.base, num, self.varname)
        if univar.degree(den) == 0 and self.base.eq(den[0], self.base.one):
            return ns
        ds = _upoly_str(self.base, den, self.varname)
        return f"({ns})/({ds})"

    def random_element(self, rng, size=4):
        B = self.base
        num = tuple(B.random_element(rng) for _ in range(rng.randint(0, size)))
        den = tuple(B.random_element(rng) for _ in range(rng.randint(0, size))) + (B.one,)
        return self.make(num, den)

    def describe(self):
        return {"kind": "rational_functions", "base": self.base.describe(),
                "symbol": self.varname}

    def _key(self):
        return (self.base, self.varname)

    def __repr__(self):
        return f"{self.base}({self.varname})"


class QuadraticExtField(Field):
    """base[t]/(t^2 - square) for a non-square `square`; values are pairs."""

    @property
    def characteristic(self):
        return self.base.characteristic

    def __init__(self, base, square, varname="beta"):
        self.base = base
        self.square = square
        self.varname = varname
        self.char = base.char
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)
        self.gen = FieldElement(self, (base.zero, base.one))

    def from_base(self, b):
        return (b, self.base.zero)

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def add(self, a, b):
        B = self.base
        return (B.add(a[0], b[0]), B.add(a[1], b[1]))

    def neg(self, a):
        B = self.base
        return (B.neg(a[0]), B.neg(a[1]))

    def mul(self, a, b):
        B = self.base
        c1, d1 = a
        c2, d2 = b
        return (B.add(B.mul(c1, c2), B.mul(self.square, B.mul(d1, d2))),
                B.add(B.mul(c1, d2), B.mul(c2, d1)))

    def conj(self, a):
        return (a[0], self.base.neg(a[1]))

    def inv(self, a):
        B = self.base
        c, d = a
        norm = B.sub(B.mul(c, c), B.mul(self.square, B.mul(d, d)))
        if B.is_zero(norm):
            raise ZeroDivisionError("element of zero norm in quadratic extension")
        ninv = B.inv(norm)
        return (B.mul(c, ninv), B.neg(B.mul(d, ninv)))

    def is_zero(self, a):
        B = self.base
        return B.is_zero(a[0]) and B.is_zero(a[1])

    def content_multiplier(self, values):
        flat = [c for v in values for c in v]
        u = self.base.content_multiplier(flat)
        return self.from_base(u)

    def to_str(self, a):
        B = self.base
        c, d = a
        if B.is_zero(d):
            return B.to_str(c)
        ds = B.to_str(d)
        if any(ch in ds[1:] for ch in "+-") or "/" in ds:
            dterm = f"({ds})*{self.varname}"
        elif ds == "1":
            dterm = self.varname
        elif ds == "-1":
            dterm = f"-{self.varname}"
        else:
            dterm = f"{ds}*{self.varname}"
        if B.is_zero(c):
            return dterm
        cs = B.to_str(c)
        if dterm.startswith("-"):
            return f"{cs}{dterm}"
        return f"{cs}+{dterm}"

    def random_element(self, rng, size=10):
        return (self.base.random_element(rng, size),
                self.base.random_element(rng, size))

    def describe(self):
        return {"kind": "quadratic_extension", "base": self.base.describe(),
                "symbol": self.varname}

    def _key(self):
        return (self.base, self.square, self.varname)

    def __repr__(self):
        return f"{self.base}[{self.varname}]"


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------

def _clear_to_ints(coeffs):
    fracs = [Fraction(c) for c in coeffs]
    den = 1
    for c in fracs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    return [int(c * den) for c in fracs]


def roots_mod_p(coeffs, p):
    """All roots in GF(p) of a rational-coefficient polynomial, sorted.

    The polynomial is cleared to integers first; p must not divide the
    cleared leading coefficient (degree would drop and the search would
    answer a different question).
    """
    ints = _clear_to_ints(coeffs)
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        raise ValueError("zero polynomial")
    if ints[-1] % p == 0:
        raise ValueError(f"{p} divides the leading coefficient")
    return sorted(r for r in range(p)
                  if sum(c * pow(r, i, p) for i, c in enumerate(ints)) % p == 0)


def _sturm_chain(f):
    chain = [f, univar.derivative(QQ, f)]
    while chain[-1]:
        _, r = univar.divmod_(QQ, chain[-2], chain[-1])
        if not r:
            break
        chain.append(univar.neg(QQ, r))
    return chain


def _sign_variations(chain, x):
    signs = []
    for s in chain:
        v = univar.evaluate(QQ, s, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_root_isolate(coeffs, tol):
    """Isolating intervals of width <= tol around each real root.

    Sturm sign-change counts drive the bisection; the input is made
    squarefree first, so every interval holds exactly one simple root.
    Returns a sorted list of (lo, hi) Fraction pairs; a width-zero pair
    marks an exact rational root.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    f = univar.normalize((Fraction(c) for c in coeffs), QQ)
    if univar.degree(f) < 1:
        raise ValueError("need a nonconstant polynomial")
    g = univar.qq_gcd(f, univar.derivative(QQ, f))
    if univar.degree(g) > 0:
        f, _ = univar.divmod_(QQ, f, g)
    chain = _sturm_chain(f)
    lc = abs(f[-1])
    bound = 1 + max(abs(c) for c in f) / lc
    out = []

    def split_point(a, b):
        for num, den in ((1, 2), (1, 3), (2, 5), (3, 7)):
            m = a + (b - a) * Fraction(num, den)
            if univar.evaluate(QQ, f, m):
                return m, False
        # a rational root sits at one of the probes; report it exactly
        m = a + (b - a) / 2
        return m, True

    stack = [(-bound, bound, _sign_variations(chain, -bound) - _sign_variations(chain, bound))]
    while stack:
        a, b, count = stack.pop()
        if count == 0:
            continue
        if count == 1 and b - a <= tol:
            out.append((a, b))
            continue
        m, is_root = split_point(a, b)
        if is_root:
            out.append((m, m))
        vm = _sign_variations(chain, m)
        left = _sign_variations(chain, a) - vm - (1 if is_root else 0)
        right = vm - _sign_variations(chain, b)
        stack.append((a, m, left))
        stack.append((m, b, right))
    out.sort()
    return out


def fraction_decimal_str(x, digits=12):
    """Decimal rendering of a Fraction, rounded to `digits` places."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = x * 10 ** digits
    n = scaled.numerator // scaled.denominator
    if 2 * (scaled - n) >= 1:
        n += 1
    whole, frac = divmod(n, 10 ** digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"
