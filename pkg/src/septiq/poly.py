"""Sparse multivariate polynomials over the exact fields.

Terms live in a dict keyed by exponent tuples; the ring object carries
the variable names, coefficient field and monomial order, and caches the
packed integer sort key of every exponent it has seen.  Exponents are
bounded by 16 bits per variable; multiplication checks the bound and
refuses to wrap.

Besides arithmetic this module holds the structural operations the rest
of the package leans on: substitution, partial derivatives, determinants
by cofactor expansion, Sylvester resultants evaluated fraction-free
(Bareiss), and univariate-view division with polynomial coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import FieldElement

EXP_BITS = 16
EXP_LIMIT = 1 << EXP_BITS
_FIELD_BITS = EXP_BITS + 4          # room for total degree of ~16 variables
_MASK = (1 << _FIELD_BITS) - 1


class ExponentOverflowError(OverflowError):
    """A product pushed some exponent past the 16-bit representation."""


class ExactDivisionError(ArithmeticError):
    """Division that was promised to be exact left a remainder."""


class Degrevlex:
    """Graded reverse lexicographic order."""

    tag = ("degrevlex",)

    def key_fn(self, nvars):
        def key(exp):
            k = 0
            for e in exp:
                k += e
            for e in reversed(exp):
                k = (k << _FIELD_BITS) | (_MASK - e)
            return k
        return key

    def key_bits(self, nvars):
        return _FIELD_BITS * (nvars + 1)


class Lex:
    """Pure lexicographic order, first variable strongest."""

    tag = ("lex",)

    def key_fn(self, nvars):
        def key(exp):
            k = 0
            for e in exp:
                k = (k << _FIELD_BITS) | e
            return k
        return key

    def key_bits(self, nvars):
        return _FIELD_BITS * nvars


class Block:
    """Elimination order: degrevlex on the first `n_elim` variables, then
    degrevlex on the rest; any monomial touching the first block beats
    every monomial that avoids it."""

    def __init__(self, n_elim):
        if n_elim < 1:
            raise ValueError("need at least one eliminated variable")
        self.n_elim = n_elim
        self.tag = ("block", n_elim)

    def key_fn(self, nvars):
        if not (0 < self.n_elim < nvars):
            raise ValueError("block split outside variable range")
        inner = Degrevlex()
        ka = inner.key_fn(self.n_elim)
        kb = inner.key_fn(nvars - self.n_elim)
        shift = inner.key_bits(nvars - self.n_elim)
        n1 = self.n_elim

        def key(exp):
            return (ka(exp[:n1]) << shift) | kb(exp[n1:])
        return key

    def key_bits(self, nvars):
        return _FIELD_BITS * (nvars + 2)


class Ring:
    """Polynomial ring context: names, coefficient field, monomial order."""

    __slots__ = ("field", "names", "order", "nvars", "key", "_keycache",
                 "zero_exp", "_ident")

    def __init__(self, names, field, order=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.field = field
        self.order = order or Degrevlex()
        self.nvars = len(names)
        self.zero_exp = (0,) * self.nvars
        raw_key = self.order.key_fn(self.nvars)
        cache = {}

        def key(exp, _cache=cache, _raw=raw_key):
            k = _cache.get(exp)
            if k is None:
                k = _cache[exp] = _raw(exp)
            return k
        self.key = key
        self._keycache = cache
        self._ident = (names, field, self.order.tag)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._ident == other._ident

    def __hash__(self):
        return hash(self._ident)

    def __repr__(self):
        return f"Ring({','.join(self.names)}; {self.field}; {self.order.tag[0]})"

    def poly(self, terms):
        """Canonicalize a raw {exp: value} mapping into a Polynomial."""
        K = self.field
        clean = {e: c for e, c in terms.items() if not K.is_zero(c)}
        return Polynomial(self, clean)

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return Polynomial(self, {self.zero_exp: self.field.one})

    def const(self, value):
        K = self.field
        if isinstance(value, FieldElement):
            if value.field != K:
                raise ValueError("constant from the wrong field")
            v = value.value
        elif isinstance(value, int):
            v = K.from_int(value)
        elif isinstance(value, Fraction):
            v = K.from_fraction(value)
        else:
            v = value
        return self.poly({self.zero_exp: v})

    def var(self, name):
        i = self.names.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return tuple(self.var(n) for n in self.names)


def exp_mul(a, b):
    out = tuple(x + y for x, y in zip(a, b))
    for e in out:
        if e >= EXP_LIMIT:
            raise ExponentOverflowError(f"exponent {e} exceeds 16 bits")
    return out


def exp_divides(a, b):
    """Does x^a divide x^b?"""
    return all(x <= y for x, y in zip(a, b))


def exp_div(b, a):
    """b - a componentwise; caller guarantees divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # -- basic structure -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def lm(self):
        """Leading exponent under the ring order."""
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def lc_raw(self):
        return self.terms[self.lm()]

    def lc(self):
        return FieldElement(self.ring.field, self.lc_raw())

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        i = self.ring.names.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def sorted_terms(self):
        """Terms in decreasing order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def coefficient(self, exp):
        v = self.terms.get(tuple(exp))
        if v is None:
            v = self.ring.field.zero
        return FieldElement(self.ring.field, v)

    # -- arithmetic ------------------------------------------------------

    def _coerce_scalar(self, other):
        K = self.ring.field
        if isinstance(other, FieldElement):
            if other.field != K:
                return None
            return other.value
        if isinstance(other, int):
            return K.from_int(other)
        if isinstance(other, Fraction):
            return K.from_fraction(other)
        return None

    def __add__(self, other):
        R = self.ring
        K = R.field
        if isinstance(other, Polynomial):
            if other.ring != R:
                raise ValueError("polynomials from different rings")
            big, small = (self.terms, other.terms)
            out = dict(big)
            for e, c in small.items():
                cur = out.get(e)
                if cur is None:
                    out[e] = c
                else:
                    s = K.add(cur, c)
                    if K.is_zero(s):
                        del out[e]
                    else:
                        out[e] = s
            return Polynomial(R, out)
        v = self._coerce_scalar(other)
        if v is None:
            return NotImplemented
        return self + R.const(FieldElement(K, v))

    __radd__ = __add__

    def __neg__(self):
        K = self.ring.field
        return Polynomial(self.ring, {e: K.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, Polynomial):
            return self + (-other)
        v = self._coerce_scalar(other)
        if v is None:
            return NotImplemented
        return self + (-self.ring.const(FieldElement(self.ring.field, v)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        R = self.ring
        K = R.field
        if isinstance(other, Polynomial):
            if other.ring != R:
                raise ValueError("polynomials from different rings")
            a, b = self.terms, other.terms
            if len(a) > len(b):
                a, b = b, a
            out = {}
            for e1, c1 in a.items():
                for e2, c2 in b.items():
                    e = exp_mul(e1, e2)
                    c = K.mul(c1, c2)
                    cur = out.get(e)
                    if cur is None:
                        out[e] = c
                    else:
                        s = K.add(cur, c)
                        if K.is_zero(s):
                            del out[e]
                        else:
                            out[e] = s
            return Polynomial(R, {e: c for e, c in out.items() if not K.is_zero(c)})
        v = self._coerce_scalar(other)
        if v is None:
            return NotImplemented
        if K.is_zero(v):
            return R.zero
        return Polynomial(R, {e: K.mul(c, v) for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        acc = self.ring.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)):
            v = self._coerce_scalar(other)
            if v is None:
                return NotImplemented
            K = self.ring.field
            if K.is_zero(v):
                return not self.terms
            return self.terms == {self.ring.zero_exp: v}
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def monic(self):
        if not self.terms:
            return self
        K = self.ring.field
        lc = self.lc_raw()
        if K.eq(lc, K.one):
            return self
        ilc = K.inv(lc)
        return Polynomial(self.ring, {e: K.mul(c, ilc) for e, c in self.terms.items()})

    def map_coeffs(self, fn):
        K = self.ring.field
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not K.is_zero(v):
                out[e] = v
        return Polynomial(self.ring, out)

    # -- calculus and substitution --------------------------------------

    def diff(self, name):
        R = self.ring
        K = R.field
        i = R.names.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            ne = e[:i] + (k - 1,) + e[i + 1:]
            v = K.mul(c, K.from_int(k))
            if K.is_zero(v):
                continue
            cur = out.get(ne)
            out[ne] = K.add(cur, v) if cur is not None else v
        return R.poly(out)

    def substitute(self, assignments):
        """Substitute polynomials or scalars for variables by name."""
        R = self.ring
        K = R.field
        subs = {}
        for name, val in assignments.items():
            i = R.names.index(name)
            if not isinstance(val, Polynomial):
                val = R.const(val)
            elif val.ring != R:
                raise ValueError("substitution value from a different ring")
            subs[i] = val
        pow_cache = {i: {0: R.one} for i in subs}

        def power(i, k):
            cache = pow_cache[i]
            got = cache.get(k)
            if got is None:
                got = cache[k] = power(i, k - 1) * subs[i]
            return got

        acc = R.zero
        for e, c in self.terms.items():
            base_exp = tuple(0 if i in subs else x for i, x in enumerate(e))
            term = Polynomial(R, {base_exp: c})
            for i in subs:
                if e[i]:
                    term = term * power(i, e[i])
            acc = acc + term
        return acc

    def evaluate(self, point):
        """Full evaluation; `point` maps every variable name to a value."""
        R = self.ring
        K = R.field
        vals = []
        for n in R.names:
            v = point[n]
            if isinstance(v, FieldElement):
                if v.field != K:
                    raise ValueError("point coordinate from the wrong field")
                vals.append(v.value)
            elif isinstance(v, int):
                vals.append(K.from_int(v))
            elif isinstance(v, Fraction):
                vals.append(K.from_fraction(v))
            else:
                vals.append(v)
        acc = K.zero
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = K.mul(t, _field_pow(K, vals[i], k))
            acc = K.add(acc, t)
        return FieldElement(K, acc)

    # -- ring transport --------------------------------------------------

    def map_to(self, target, rename=None, coeff_map=None):
        """Carry the polynomial into another ring.

        Variables are matched by name (after `rename`); a source variable
        missing from the target must have exponent zero everywhere.
        `coeff_map` converts raw coefficients when the fields differ.
        """
        rename = rename or {}
        src = self.ring
        pos = []
        for i, n in enumerate(src.names):
            n2 = rename.get(n, n)
            pos.append(target.names.index(n2) if n2 in target.names else None)
        K2 = target.field
        out = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, x in enumerate(e):
                if x == 0:
                    continue
                j = pos[i]
                if j is None:
                    raise ValueError(
                        f"variable {src.names[i]} absent from target ring "
                        "but present in the polynomial")
                ne[j] = x
            v = coeff_map(c) if coeff_map else c
            if isinstance(v, FieldElement):
                if v.field != K2:
                    raise ValueError("coefficient mapped into the wrong field")
                v = v.value
            if not K2.is_zero(v):
                ne = tuple(ne)
                cur = out.get(ne)
                out[ne] = K2.add(cur, v) if cur is not None else v
        return target.poly(out)

    # -- univariate views ------------------------------------------------

    def coeffs_in(self, name):
        """View as univariate in `name`: list indexed by that exponent,
        entries are polynomials free of `name` (or None)."""
        R = self.ring
        i = R.names.index(name)
        d = self.degree_in(name)
        buckets = [None] * (d + 1)
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            b = buckets[k]
            if b is None:
                buckets[k] = b = {}
            cur = b.get(ne)
            b[ne] = R.field.add(cur, c) if cur is not None else c
        return [R.poly(b) if b is not None else R.zero for b in buckets]

    # -- rendering -------------------------------------------------------

    def to_str(self):
        if not self.terms:
            return "0"
        K = self.ring.field
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}"
                for n, k in zip(names, e) if k)
            cs = K.to_str(c)
            if not mono:
                term = cs if not any(ch in cs[1:] for ch in "+-") else f"({cs})"
                if cs.startswith("-") and "(" in term:
                    term = f"-({cs[1:]})" if not any(ch in cs[2:] for ch in "+-") else term
            elif cs == "1":
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
        return "".join(parts)

    def __repr__(self):
        return self.to_str()


def _field_pow(K, v, n):
    acc = K.one
    base = v
    while n:
        if n & 1:
            acc = K.mul(acc, base)
        base = K.mul(base, base) if n > 1 else base
        n >>= 1
    return acc


# ---------------------------------------------------------------------------
# Derived operators
# ---------------------------------------------------------------------------

def jacobian(f):
    """Gradient with respect to every ring variable, in ring order."""
    return [f.diff(n) for n in f.ring.names]


def poly_det(rows):
    """Determinant of a square matrix of polynomials, cofactor expansion."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    if n == 0:
        raise ValueError("empty matrix")
    ring = rows[0][0].ring

    def det(mat):
        m = len(mat)
        if m == 1:
            return mat[0][0]
        if m == 2:
            return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
        acc = ring.zero
        for j, head in enumerate(mat[0]):
            if head.is_zero():
                continue
            minor = [r[:j] + r[j + 1:] for r in mat[1:]]
            term = head * det(minor)
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    return det(rows)


def hessian_det(f):
    """Determinant of the matrix of second partials."""
    names = f.ring.names
    grads = [f.diff(n) for n in names]
    rows = [[g.diff(n) for n in names] for g in grads]
    return poly_det(rows)


def exact_divide(f, g):
    """Return q with f == q*g, raising ExactDivisionError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("exact division by zero")
    R = f.ring
    K = R.field
    if f.is_zero():
        return R.zero
    rem = dict(f.terms)
    out = {}
    glm = g.lm()
    gcinv = K.inv(g.lc_raw())
    gterms = list(g.terms.items())
    key = R.key
    while rem:
        e = max(rem, key=key)
        if not exp_divides(glm, e):
            raise ExactDivisionError("leading term not divisible")
        qe = exp_div(e, glm)
        qc = K.mul(rem[e], gcinv)
        out[qe] = qc
        for ge, gc in gterms:
            ne = exp_mul(ge, qe)
            delta = K.mul(gc, qc)
            cur = rem.get(ne)
            if cur is None:
                rem[ne] = K.neg(delta)
            else:
                s = K.sub(cur, delta)
                if K.is_zero(s):
                    del rem[ne]
                else:
                    rem[ne] = s
    return R.poly(out)


def resultant(f, g, name):
    """Sylvester resultant with respect to one variable, by fraction-free
    Gaussian elimination on the Sylvester matrix.

    Row layout puts the f-block first, so resultant(x - a, x - b, "x")
    comes out as a - b.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    R = f.ring
    if g.ring != R:
        raise ValueError("polynomials from different rings")
    m = f.degree_in(name)
    n = g.degree_in(name)
    if m == 0 and n == 0:
        return R.one
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    cf = f.coeffs_in(name)     # index = exponent
    cg = g.coeffs_in(name)
    size = m + n
    rows = []
    for i in range(n):
        row = [R.zero] * size
        for k, c in enumerate(reversed(cf)):      # degree m first
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [R.zero] * size
        for k, c in enumerate(reversed(cg)):
            row[i + k] = c
        rows.append(row)

    sign = 1
    prev = R.one
    for k in range(size - 1):
        piv = None
        for i in range(k, size):
            if not rows[i][k].is_zero():
                piv = i
                break
        if piv is None:
            return R.zero
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        pk = rows[k][k]
        for i in range(k + 1, size):
            ri = rows[i]
            rk = rows[k]
            for j in range(k + 1, size):
                num = ri[j] * pk - ri[k] * rk[j]
                ri[j] = exact_divide(num, prev) if not num.is_zero() else R.zero
            ri[k] = R.zero
        prev = pk
    det = rows[size - 1][size - 1]
    return det if sign == 1 else -det


class NonUnitLeadingCoefficientError(ValueError):
    """Univariate-view division needs an invertible leading coefficient."""


def divide_univariate(f, g, name):
    """Quotient and remainder of f by g viewed as univariate in `name`.

    Other variables ride along inside the coefficients; the divisor's
    leading coefficient must be a nonzero constant so every step stays in
    the ring.
    """
    R = f.ring
    if g.ring != R:
        raise ValueError("polynomials from different rings")
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    K = R.field
    dg = g.degree_in(name)
    cg = g.coeffs_in(name)
    lead = cg[-1]
    if lead.total_degree() != 0:
        raise NonUnitLeadingCoefficientError(
            f"leading {name}-coefficient is not constant: {lead}")
    lead_inv = K.inv(lead.lc_raw())
    df = f.degree_in(name)
    if df < dg:
        return R.zero, f
    var = R.var(name)
    rem_c = f.coeffs_in(name)
    quo = R.zero
    for k in range(df - dg, -1, -1):
        top = rem_c[dg + k]
        if top.is_zero():
            continue
        qc = top * FieldElement(K, lead_inv)
        quo = quo + qc * var ** k
        for i in range(dg + 1):
            rem_c[i + k] = rem_c[i + k] - qc * cg[i]
    rem = R.zero
    for i, c in enumerate(rem_c[:dg]):
        rem = rem + c * var ** i
    return quo, rem
