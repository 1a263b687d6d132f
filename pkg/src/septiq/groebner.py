"""Buchberger's algorithm and the ideal-theoretic queries built on it.

The basis loop works on raw term dicts with monic reducers, so a
reduction step is a tail subtraction without inverses.  Pair selection
follows the normal strategy (smallest lcm in the ring order first) and
the update step applies the Gebauer-Moeller product and chain pruning.
Every S-polynomial reduction counts against an optional work budget;
exceeding it raises instead of grinding on.

Dimension comes from maximal independent variable sets of the leading
term ideal.  Multiplicity goes through the Hilbert series of the leading
term ideal: numerator by the standard pivot recursion, then exact
division by (1-t)^codim and evaluation at 1.  For a one-dimensional
homogeneous cone that value is the stable Hilbert function value, which
is the count convention the verification pipeline relies on; for a
zero-dimensional ideal it is the number of standard monomials.
"""

from __future__ import annotations

import heapq

from .poly import Block, Ring, exp_div, exp_divides, exp_lcm, exp_mul


class BudgetExceededError(RuntimeError):
    def __init__(self, message, pairs_reduced):
        super().__init__(message)
        self.pairs_reduced = pairs_reduced


class NotZeroDimensionalError(ValueError):
    """Multiplicity asked of an ideal whose count is not finite."""


class GroebnerStats:
    __slots__ = ("pairs_considered", "pairs_reduced", "zero_reductions",
                 "basis_additions", "max_basis")

    def __init__(self):
        self.pairs_considered = 0
        self.pairs_reduced = 0
        self.zero_reductions = 0
        self.basis_additions = 0
        self.max_basis = 0

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}


def _nf_raw(K, keyf, h, reducers):
    """Full normal form of a term dict against monic (lm, terms) reducers."""
    work = dict(h)
    out = {}
    while work:
        e = max(work, key=keyf)
        c = work.pop(e)
        if K.is_zero(c):
            continue
        hit = None
        for lm, terms in reducers:
            if exp_divides(lm, e):
                hit = (lm, terms)
                break
        if hit is None:
            out[e] = c
            continue
        lm, terms = hit
        delta = exp_div(e, lm)
        for ge, gc in terms.items():
            if ge == lm:
                continue
            ne = exp_mul(ge, delta)
            v = K.mul(c, gc)
            cur = work.get(ne)
            if cur is None:
                work[ne] = K.neg(v)
            else:
                s = K.sub(cur, v)
                if K.is_zero(s):
                    del work[ne]
                else:
                    work[ne] = s
    return out


def _monic_raw(K, terms, lm):
    lc = terms[lm]
    if K.eq(lc, K.one):
        return terms
    ilc = K.inv(lc)
    return {e: K.mul(c, ilc) for e, c in terms.items()}


def _spoly_raw(K, f_lm, f_terms, g_lm, g_terms, lcm):
    """S-polynomial of two monic term dicts; the lcm term cancels."""
    df = exp_div(lcm, f_lm)
    dg = exp_div(lcm, g_lm)
    out = {}
    for e, c in f_terms.items():
        if e == f_lm:
            continue
        out[exp_mul(e, df)] = c
    for e, c in g_terms.items():
        if e == g_lm:
            continue
        ne = exp_mul(e, dg)
        cur = out.get(ne)
        if cur is None:
            out[ne] = K.neg(c)
        else:
            s = K.sub(cur, c)
            if K.is_zero(s):
                del out[ne]
            else:
                out[ne] = s
    return out


class GroebnerBasis:
    """Reduced basis: monic elements, sorted by leading monomial."""

    __slots__ = ("ring", "polys", "stats", "_reducers")

    def __init__(self, ring, polys, stats):
        self.ring = ring
        self.polys = tuple(polys)
        self.stats = stats
        self._reducers = [(p.lm(), p.terms) for p in self.polys]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def lead_exps(self):
        return [p.lm() for p in self.polys]

    def reduce(self, f):
        """Normal form of f against the basis."""
        if f.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        out = _nf_raw(self.ring.field, self.ring.key, f.terms, self._reducers)
        return self.ring.poly(out)

    def contains(self, f):
        return self.reduce(f).is_zero()

    def is_unit_ideal(self):
        return any(sum(p.lm()) == 0 for p in self.polys)

    def is_homogeneous(self):
        return all(p.is_homogeneous() for p in self.polys)

    def __repr__(self):
        return f"GroebnerBasis({len(self.polys)} elements)"


def groebner_basis(polys, budget=None, trace=None, degree_bound=None):
    """Reduced Groebner basis of the given generators.

    `budget` caps the number of S-polynomial reductions; `trace` is an
    optional callable fed structured progress dicts.  `degree_bound`
    discards S-pairs whose lcm exceeds that total degree; for homogeneous
    input the result is then only a truncated basis, correct up to the
    bound, so leading-term data above it must not be trusted.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("no nonzero generators")
    R = polys[0].ring
    for p in polys:
        if p.ring != R:
            raise ValueError("generators from different rings")
    K = R.field
    keyf = R.key
    stats = GroebnerStats()

    basis = []            # list of dicts, monic
    lms = []              # leading exponents
    alive = []            # eligible for pair generation / minimal basis
    pairs = {}            # (i, j) -> lcm exp
    heap = []             # (key(lcm), i, j)

    def add_poly(terms):
        lm = max(terms, key=keyf)
        terms = _monic_raw(K, terms, lm)
        t = len(basis)
        basis.append(terms)
        lms.append(lm)
        alive.append(True)
        stats.basis_additions += 1
        stats.max_basis = max(stats.max_basis, sum(alive))

        # Gebauer-Moeller update ----------------------------------------
        # chain-prune old pairs whose lcm the new leading monomial divides
        # strictly finer than either mixed lcm
        for (i, j), l in list(pairs.items()):
            if exp_divides(lm, l):
                lij_t = exp_lcm(lms[i], lm)
                ljt = exp_lcm(lms[j], lm)
                if lij_t != l and ljt != l:
                    del pairs[(i, j)]
        # build the new pair set before retiring anything: a superseded
        # element keeps exactly one pair with its replacement
        cand = {}
        for i in range(t):
            if not alive[i]:
                continue
            l = exp_lcm(lms[i], lm)
            cand.setdefault(l, []).append(i)
        for i in range(t):
            if alive[i] and exp_divides(lm, lms[i]):
                alive[i] = False
        drop = set()
        ls = list(cand)
        for a in ls:
            for b in ls:
                if a is not b and exp_divides(b, a) and b != a:
                    drop.add(a)
                    break
        for l, members in cand.items():
            if l in drop:
                continue
            coprime = any(
                exp_lcm(lms[i], lm) == exp_mul(lms[i], lm) for i in members)
            if coprime:
                continue
            i = min(members)
            pairs[(i, t)] = l
            heapq.heappush(heap, (keyf(l), i, t))
        if trace:
            trace({"event": "basis_add", "size": sum(alive),
                   "pairs": len(pairs), "reductions": stats.pairs_reduced})

    for p in sorted(polys, key=lambda q: keyf(q.lm())):
        red = _nf_raw(K, keyf, p.terms, list(zip(lms, basis)))
        if red:
            add_poly(red)

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        lcm = pairs.pop((i, j))
        stats.pairs_considered += 1
        if degree_bound is not None and sum(lcm) > degree_bound:
            continue
        if budget is not None and stats.pairs_reduced >= budget:
            raise BudgetExceededError(
                f"work budget of {budget} pair reductions exhausted",
                stats.pairs_reduced)
        s = _spoly_raw(K, lms[i], basis[i], lms[j], basis[j], lcm)
        stats.pairs_reduced += 1
        red = _nf_raw(K, keyf, s, list(zip(lms, basis)))
        if red:
            add_poly(red)
        else:
            stats.zero_reductions += 1

    # minimal basis: keep elements whose lm no other kept lm divides
    order = sorted(range(len(basis)), key=lambda i: keyf(lms[i]))
    kept = []
    for i in order:
        if any(exp_divides(lms[k], lms[i]) for k in kept):
            continue
        kept.append(i)
    # interreduce tails
    final = []
    for i in kept:
        reducers = [(lms[k], basis[k]) for k in kept if k != i]
        red = _nf_raw(K, keyf, basis[i], reducers)
        lm = max(red, key=keyf)
        final.append((lm, _monic_raw(K, red, lm)))
    final.sort(key=lambda t: keyf(t[0]))
    gb_polys = [R.poly(terms) for _, terms in final]
    if trace:
        trace({"event": "done", "basis": len(gb_polys), **stats.as_dict()})
    return GroebnerBasis(R, gb_polys, stats)


def normal_form(f, gb):
    """Normal form against a GroebnerBasis (or list of monic polynomials)."""
    if isinstance(gb, GroebnerBasis):
        return gb.reduce(f)
    reducers = [(p.lm(), p.monic().terms) for p in gb if not p.is_zero()]
    out = _nf_raw(f.ring.field, f.ring.key, f.terms, reducers)
    return f.ring.poly(out)


# ---------------------------------------------------------------------------
# Dimension and multiplicity
# ---------------------------------------------------------------------------

def dimension(gb):
    """Krull dimension of the quotient by the leading-term ideal.

    Computed over the full affine cone: a homogeneous ideal cutting out
    finitely many projective points reports 1 here.  The unit ideal
    reports -1.
    """
    from itertools import combinations
    if gb.is_unit_ideal():
        return -1
    n = gb.ring.nvars
    lead = gb.lead_exps()
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in lead]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            ss = set(subset)
            if all(not s <= ss for s in supports):
                return size
    return 0


def _minimal_exps(exps):
    out = []
    for e in sorted(exps, key=sum):
        if not any(exp_divides(f, e) for f in out):
            out.append(e)
    return out


def _poly_sub_shifted(a, b, k):
    """a(t) - t^k * b(t) on int lists."""
    out = list(a) + [0] * max(0, k + len(b) - len(a))
    for i, c in enumerate(b):
        out[k + i] -= c
    while out and out[-1] == 0:
        out.pop()
    return out


def _hilbert_numerator(gens, memo):
    """Numerator of the Hilbert series of a monomial quotient over (1-t)^n."""
    gens = tuple(sorted(gens))
    got = memo.get(gens)
    if got is not None:
        return got
    if not gens:
        res = [1]
    elif any(sum(e) == 0 for e in gens):
        res = []
    elif len(gens) == 1:
        res = _poly_sub_shifted([1], [1], sum(gens[0]))
    else:
        pivot = max(gens, key=sum)
        rest = [e for e in gens if e != pivot]
        n_rest = _hilbert_numerator(rest, memo)
        colon = _minimal_exps(
            tuple(max(x - y, 0) for x, y in zip(e, pivot)) for e in rest)
        n_colon = _hilbert_numerator(tuple(colon), memo)
        res = _poly_sub_shifted(n_rest, n_colon, sum(pivot))
    memo[gens] = res
    return res


def multiplicity(gb):
    """Count of standard monomials (dim 0) or the stable Hilbert value of a
    one-dimensional homogeneous cone; 0 for the unit ideal."""
    if gb.is_unit_ideal():
        return 0
    d = dimension(gb)
    if d > 1 or (d == 1 and not gb.is_homogeneous()):
        raise NotZeroDimensionalError(
            f"dimension {d} ideal has no finite multiplicity here")
    n = gb.ring.nvars
    lead = _minimal_exps(gb.lead_exps())
    num = _hilbert_numerator(tuple(lead), {})
    # divide by (1-t)^(n-d); each division must be exact
    for _ in range(n - d):
        # synthetic division by (1 - t): c'_k = c_k + c'_{k-1}
        out = []
        acc = 0
        for c in num:
            acc += c
            out.append(acc)
        if out and out[-1] != 0:
            raise ArithmeticError("Hilbert numerator not divisible by (1-t)")
        if out:
            out.pop()
        num = out
    return sum(num)


# ---------------------------------------------------------------------------
# Quotient and elimination
# ---------------------------------------------------------------------------

def _transport(polys, target, rename=None):
    return [p.map_to(target, rename) for p in polys]


def eliminate(polys, names, budget=None):
    """Generators of the ideal's intersection with the subring avoiding
    `names`, returned in the original ring."""
    if not polys:
        return []
    R = polys[0].ring
    kill = list(names)
    if not kill:
        return [p for p in groebner_basis(polys, budget=budget)]
    for n in kill:
        if n not in R.names:
            raise ValueError(f"unknown variable {n}")
    keep = [n for n in R.names if n not in kill]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    Rb = Ring(tuple(kill) + tuple(keep), R.field, Block(len(kill)))
    gb = groebner_basis(_transport(polys, Rb), budget=budget)
    kill_idx = [Rb.names.index(n) for n in kill]
    out = []
    for p in gb:
        if all(all(e[i] == 0 for i in kill_idx) for e in p.terms):
            out.append(p.map_to(R))
    return out


def ideal_quotient(polys, f, budget=None):
    """Generators of (I : f) via a tag variable and block elimination."""
    if f.is_zero():
        raise ZeroDivisionError("quotient by the zero polynomial")
    R = f.ring
    tag = "_q"
    while tag in R.names:
        tag += "_"
    Rt = Ring((tag,) + R.names, R.field, Block(1))
    t = Rt.var(tag)
    lifted = _transport([p for p in polys if not p.is_zero()], Rt)
    f_t = f.map_to(Rt)
    J = [t * g for g in lifted] + [(Rt.one - t) * f_t]
    gb = groebner_basis(J, budget=budget)
    out = []
    from .poly import exact_divide
    for p in gb:
        if all(e[0] == 0 for e in p.terms):
            h = p.map_to(R)
            out.append(exact_divide(h, f))
    return out


class Ideal:
    """Generators plus a cached Groebner basis."""

    def __init__(self, generators):
        gens = [g for g in generators if not g.is_zero()]
        if not gens:
            raise ValueError("ideal needs a nonzero generator")
        self.ring = gens[0].ring
        for g in gens:
            if g.ring != self.ring:
                raise ValueError("generators from different rings")
        self.generators = tuple(gens)
        self._gb = None

    def groebner(self, budget=None, trace=None):
        if self._gb is None:
            self._gb = groebner_basis(self.generators, budget=budget,
                                      trace=trace)
        return self._gb

    def dimension(self, budget=None):
        return dimension(self.groebner(budget))

    def multiplicity(self, budget=None):
        return multiplicity(self.groebner(budget))

    def contains(self, f, budget=None):
        return self.groebner(budget).contains(f)

    def quotient(self, f, budget=None):
        return Ideal(ideal_quotient(list(self.generators), f, budget=budget))

    def eliminate(self, names, budget=None):
        return eliminate(list(self.generators), names, budget=budget)
