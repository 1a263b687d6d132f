"""Exact real-root counting and isolation over the rationals.

Sturm chains on Fraction coefficients: no floating point anywhere, so
an isolating interval of width 1e-8 is a proof, not an estimate.  Only
what the parameter condition needs is here; the polynomials are tuples
of Fractions, low degree first, as in univar.
"""

from fractions import Fraction

from . import univar
from .family import ALPHA_CUBIC
from .fields import QQ


def alpha_cubic_coeffs():
    """The defining cubic as exact rational coefficients."""
    return univar.normalize([Fraction(c) for c in ALPHA_CUBIC], QQ)


def sturm_chain(f):
    """Sturm sequence: f, f', then successive negated remainders."""
    f = univar.normalize(f, QQ)
    if univar.degree(f) < 0:
        raise ValueError("the zero polynomial has no Sturm chain")
    chain = [f]
    d = univar.derivative(QQ, f)
    while univar.degree(d) >= 0:
        chain.append(d)
        if univar.degree(d) == 0:
            break
        _, r = univar.divmod_(QQ, chain[-2], chain[-1])
        d = univar.neg(QQ, r)
    return chain


def _variations(chain, x):
    signs = []
    for g in chain:
        v = univar.evaluate(QQ, g, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(f, lo, hi, chain=None):
    """Distinct real roots in the half-open interval (lo, hi]."""
    if lo > hi:
        raise ValueError("interval endpoints out of order")
    if chain is None:
        chain = sturm_chain(f)
    return _variations(chain, Fraction(lo)) - _variations(chain, Fraction(hi))


def root_bound(f):
    """Cauchy bound: every real root lies in (-B, B)."""
    f = univar.normalize(f, QQ)
    if univar.degree(f) < 1:
        raise ValueError("need a nonconstant polynomial")
    lead = f[-1]
    return 1 + max(abs(Fraction(c) / lead) for c in f[:-1])


def isolate_unique_real_root(f, tol):
    """Interval (lo, hi] of width at most tol around the single real
    root of f.

    Sturm bisection on exact endpoints; raises ValueError when the
    real-root count is anything but one, so a successful return also
    certifies uniqueness.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    chain = sturm_chain(f)
    B = root_bound(f)
    lo, hi = -B, B
    total = count_real_roots(f, lo, hi, chain=chain)
    if total != 1:
        raise ValueError(f"expected exactly one real root, found {total}")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if count_real_roots(f, lo, mid, chain=chain) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def decimal_str(value, digits):
    """Fixed-point decimal rendering of a Fraction, truncated toward
    zero; exact integer arithmetic so long expansions stay faithful."""
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    scaled = abs(value.numerator) * 10**digits // value.denominator
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"
