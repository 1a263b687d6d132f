"""Dense univariate polynomial helpers over an exact coefficient field.

A polynomial is a tuple of coefficients, constant term first, with no
trailing zeros; the zero polynomial is the empty tuple.  Every function
takes the coefficient field as its first argument and works with raw
coefficient values (the field object supplies add/mul/inv and friends),
so the same code serves Q, prime fields and number fields.

Rational coefficients get a dedicated gcd path: clear denominators to a
primitive integer polynomial and run a small-prime modular gcd with CRT
reconstruction.  A monic Euclidean gcd over Q is correct but its
coefficient growth is brutal at the degrees the condition-polynomial
computation reaches (several hundred), and the modular route keeps that
workload cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd


def normalize(coeffs, field):
    """Strip trailing zeros; return a tuple."""
    cs = list(coeffs)
    while cs and field.is_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def degree(f):
    # zero polynomial gets degree -1
    return len(f) - 1


def add(field, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = field.add(out[i], c)
    return normalize(out, field)


def neg(field, f):
    return tuple(field.neg(c) for c in f)


def sub(field, f, g):
    return add(field, f, neg(field, g))


def scale(field, f, c):
    if field.is_zero(c):
        return ()
    return normalize((field.mul(a, c) for a in f), field)


def mul(field, f, g):
    if not f or not g:
        return ()
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if field.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = field.add(out[i + j], field.mul(a, b))
    return normalize(out, field)


def mul_xk(field, f, k):
    """Multiply by x**k (shift up by k)."""
    if not f:
        return ()
    return (field.zero,) * k + tuple(f)


def divmod_(field, f, g):
    """Quotient and remainder; g must be nonzero."""
    if not g:
        raise ZeroDivisionError("univariate division by zero polynomial")
    if degree(f) < degree(g):
        return (), f
    inv_lc = field.inv(g[-1])
    rem = list(f)
    dq = degree(f) - degree(g)
    quo = [field.zero] * (dq + 1)
    for k in range(dq, -1, -1):
        top = rem[degree(g) + k]
        if field.is_zero(top):
            continue
        c = field.mul(top, inv_lc)
        quo[k] = c
        for i, b in enumerate(g):
            rem[i + k] = field.sub(rem[i + k], field.mul(c, b))
    return normalize(quo, field), normalize(rem, field)


def monic(field, f):
    if not f:
        return ()
    lc = f[-1]
    if field.eq(lc, field.one):
        return f
    return scale(field, f, field.inv(lc))


def gcd_monic(field, f, g):
    """Monic gcd by the Euclidean algorithm (generic fallback)."""
    while g:
        _, r = divmod_(field, f, g)
        f, g = g, r
    return monic(field, f)


def ext_gcd(field, f, g):
    """Return (h, u, v) with u*f + v*g = h, h the monic gcd."""
    r0, r1 = f, g
    u0, u1 = (field.one,), ()
    v0, v1 = (), (field.one,)
    while r1:
        q, r = divmod_(field, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, sub(field, u0, mul(field, q, u1))
        v0, v1 = v1, sub(field, v0, mul(field, q, v1))
    if not r0:
        return (), u0, v0
    lc_inv = field.inv(r0[-1])
    return (scale(field, r0, lc_inv), scale(field, u0, lc_inv),
            scale(field, v0, lc_inv))


def evaluate(field, f, c):
    """Horner evaluation at a field value c."""
    acc = field.zero
    for a in reversed(f):
        acc = field.add(field.mul(acc, c), a)
    return acc


def derivative(field, f):
    if len(f) <= 1:
        return ()
    out = []
    for i in range(1, len(f)):
        out.append(field.mul(f[i], field.from_int(i)))
    return normalize(out, field)


# ---------------------------------------------------------------------------
# Integer-coefficient layer (used for fast gcd over Q)
# ---------------------------------------------------------------------------

def _zz_strip(f):
    fs = list(f)
    while fs and fs[-1] == 0:
        fs.pop()
    return fs


def _zz_content(f):
    c = 0
    for a in f:
        c = int_gcd(c, abs(a))
        if c == 1:
            break
    return c


def _zz_divmod_exact(f, g):
    """Exact division of integer polynomials over Q; None if not exact."""
    if not g:
        return None
    f = [Fraction(a) for a in f]
    dq = len(f) - len(g)
    if dq < 0:
        return None
    quo = [Fraction(0)] * (dq + 1)
    glc = Fraction(g[-1])
    for k in range(dq, -1, -1):
        c = f[len(g) - 1 + k] / glc
        quo[k] = c
        if c:
            for i, b in enumerate(g):
                f[i + k] -= c * b
    if any(f):
        return None
    return quo


def _zz_gcd_mod_p(f, g, p):
    """Monic gcd of the mod-p images, as a list of ints in [0, p); None on lc collapse."""
    if f[-1] % p == 0 or g[-1] % p == 0:
        return None
    a = [c % p for c in f]
    b = [c % p for c in g]
    while b and any(b):
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        inv = pow(b[-1], -1, p)
        dq = len(a) - len(b)
        if dq < 0:
            a, b = b, a
            continue
        for k in range(dq, -1, -1):
            top = a[len(b) - 1 + k] % p
            if top:
                c = (top * inv) % p
                for i, bb in enumerate(b):
                    a[i + k] = (a[i + k] - c * bb) % p
        while a and a[-1] % p == 0:
            a.pop()
        a, b = b, a
    while a and a[-1] % p == 0:
        a.pop()
    if not a:
        return None
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def _is_probable_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic witness set for n < 2**64
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _gcd_primes(count):
    """Yield `count` distinct primes just below 2**62."""
    found = 0
    n = (1 << 62) - 1
    while found < count:
        if _is_probable_prime(n):
            yield n
            found += 1
        n -= 2


def zz_gcd(f, g):
    """Gcd of integer polynomials, primitive with positive leading coefficient.

    Small-prime modular images with CRT reconstruction, verified by exact
    trial division, falling back to more primes until the division check
    passes.  Content is handled separately so the modular step always sees
    primitive inputs.
    """
    f = _zz_strip(f)
    g = _zz_strip(g)
    if not f and not g:
        return []
    if not f:
        h = g
    elif not g:
        h = f
    else:
        h = None
    if h is not None:
        c = _zz_content(h)
        out = [a // c for a in h]
        if out[-1] < 0:
            out = [-a for a in out]
        return out

    cf, cg = _zz_content(f), _zz_content(g)
    fp = [a // cf for a in f]
    gp = [a // cg for a in g]
    content = int_gcd(cf, cg)

    if len(fp) == 1 or len(gp) == 1:
        return [content]

    best = None          # (degree, modulus, residue list in symmetric range)
    for p in _gcd_primes(64):
        img = _zz_gcd_mod_p(fp, gp, p)
        if img is None:
            continue
        d = len(img) - 1
        if d == 0:
            return [content]
        # scale the monic image by the gcd of the true leading coefficients:
        # the true primitive gcd's lc divides it, so the scaled image reduces
        # correctly and CRT converges
        lc_bound = int_gcd(abs(fp[-1]), abs(gp[-1]))
        scaled = [(c * lc_bound) % p for c in img]
        sym = [c if c <= p // 2 else c - p for c in scaled]
        if best is None or d < best[0]:
            best = (d, p, [c % p for c in scaled])
        elif d == best[0]:
            d0, m0, r0 = best
            m1 = m0 * p
            comb = []
            inv = pow(m0, -1, p)
            for a0, a1 in zip(r0, [c % p for c in scaled]):
                t = ((a1 - a0) * inv) % p
                comb.append(a0 + m0 * t)
            best = (d0, m1, comb)
            sym = [c if c <= m1 // 2 else c - m1 for c in comb]
        else:
            continue
        cand = _zz_strip(sym)
        if not cand:
            continue
        cc = _zz_content(cand)
        cand = [a // cc for a in cand]
        if cand[-1] < 0:
            cand = [-a for a in cand]
        if _zz_divmod_exact(fp, cand) is not None and \
                _zz_divmod_exact(gp, cand) is not None:
            return [a * content for a in cand]
    # a correct (if slow) last resort
    ff = tuple(Fraction(a) for a in fp)
    gg = tuple(Fraction(a) for a in gp)
    mg = _fraction_euclid_gcd(ff, gg)
    den_lcm = 1
    for a in mg:
        den_lcm = den_lcm * a.denominator // int_gcd(den_lcm, a.denominator)
    ints = [int(a * den_lcm) for a in mg]
    cc = _zz_content(ints)
    ints = [a // cc for a in ints]
    if ints[-1] < 0:
        ints = [-a for a in ints]
    return [a * content for a in ints]


def _fraction_euclid_gcd(f, g):
    while g:
        # plain long division over Q
        rem = list(f)
        while len(rem) >= len(g) and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(g):
                break
            c = rem[-1] / g[-1]
            k = len(rem) - len(g)
            for i, b in enumerate(g):
                rem[i + k] -= c * b
            rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
        f, g = g, tuple(rem)
    if not f:
        return ()
    lc = f[-1]
    return tuple(a / lc for a in f)


def qq_gcd(f, g):
    """Monic gcd of polynomials with Fraction coefficients."""
    if not f and not g:
        return ()
    den = 1
    for a in (*f, *g):
        den = den * a.denominator // int_gcd(den, a.denominator)
    fi = [int(a * den) for a in f]
    gi = [int(a * den) for a in g]
    h = zz_gcd(fi, gi)
    if not h:
        return ()
    lc = h[-1]
    return tuple(Fraction(a, lc) for a in h)
