"""Parameter scans over prime fields for highly nodal plane members.

For each five-tuple of residues the scan builds the degree-7 plane curve
of the family, counts its projective singular points through the Jacobian
ideal, and ranks the tuples by that count.  Hits at the top of the range
are additionally probed for a split-off line, which recovers the cubic
invariant carried by every known maximal tuple.

The scan is deterministic: work is partitioned into chunks keyed by the
(a1, a2) prefix (or by fixed-size blocks of the sampled index list),
chunk results are merged in canonical order, and the report is identical
for any worker count.  Completed chunks are journaled to a checkpoint
file so an interrupted scan can resume without redoing work.
"""

import hashlib
import itertools
import json
import os
import random
import time
from dataclasses import dataclass
from multiprocessing import get_context

from .family import (
    BAD_CHARACTERISTICS,
    ALPHA_CUBIC_DISPLAY,
    FamilyParams,
    UnsupportedCharacteristicError,
    alpha_of_slope,
    minpoly_roots_mod_p,
    plane_curve,
    plane_ring,
    slope_constraint_residue,
)
from .fields import FieldElement, PrimeField
from .groebner import dimension, groebner_basis, ideal_quotient, multiplicity
from .poly import Degrevlex, Ring, hessian_det, jacobian
from .univar import _is_probable_prime

CHECKPOINT_VERSION = 1
SPLIT_THRESHOLD = 15
SAMPLE_CHUNK = 256

# benchmark-only early filter.  Scanned members share a single Hilbert
# staircase through degree 10, so no probe below degree 11 can separate
# them.  The probe runs at degree 12: the singular ideal is homogeneous,
# so a degree-bounded basis is exact in degrees <= 12 and its slice of
# standard monomials there sits at or above the stable projective count.
# A slice under the hit threshold certifies too few singular points; a
# slice over PREFILTER_CAP is only reached by positive-dimensional
# singular loci.
PREFILTER_DEGREE = 12
PREFILTER_CAP = 30


class SearchResumeError(RuntimeError):
    """Checkpoint file does not match the task being resumed."""


def balanced(r, p):
    """Symmetric representative of r mod p in (-p/2, p/2]."""
    r %= p
    return r - p if r > p // 2 else r


@dataclass(frozen=True)
class SearchTask:
    prime: int
    ranges: tuple
    mode: str = "exhaustive"
    sample_size: int = 0
    seed: int = 0
    threads: int = 1
    min_nodes: int = 13
    budget: int = None
    prefilter: bool = False

    @classmethod
    def make(cls, prime, ranges=None, mode="exhaustive", sample_size=0,
             seed=0, threads=1, min_nodes=13, budget=None, prefilter=False):
        if prime in BAD_CHARACTERISTICS:
            raise UnsupportedCharacteristicError(
                f"prime {prime} collides with the construction's coefficients")
        if prime < 2 or not _is_probable_prime(prime):
            raise ValueError(f"{prime} is not prime")
        if ranges is None:
            ranges = tuple(tuple(range(prime)) for _ in range(5))
        else:
            if len(ranges) != 5:
                raise ValueError("need one residue range per parameter")
            ranges = tuple(
                tuple(sorted({r % prime for r in rng})) for rng in ranges)
            if any(not rng for rng in ranges):
                raise ValueError("empty parameter range")
        if mode not in ("exhaustive", "sample"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "sample" and sample_size < 1:
            raise ValueError("sample mode needs a positive sample size")
        if threads < 1:
            raise ValueError("thread count must be positive")
        return cls(prime, ranges, mode, sample_size, seed, threads,
                   min_nodes, budget, prefilter)

    @property
    def space_size(self):
        n = 1
        for rng in self.ranges:
            n *= len(rng)
        return n

    def fingerprint(self):
        # thread count and budget deliberately excluded: neither may
        # change which tuples produce which counts
        core = [CHECKPOINT_VERSION, self.prime, list(map(list, self.ranges)),
                self.mode, self.sample_size, self.seed, self.min_nodes,
                self.prefilter]
        blob = json.dumps(core, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class PlaneCounts:
    plane_nodes: int
    axis_nodes: int
    degenerate: bool
    pruned: bool = False


@dataclass
class LineSplit:
    t: int
    alpha: int
    alpha_satisfies_cubic: bool
    n_lines: int = 1

    def to_json_dict(self, p):
        return {
            "t": balanced(self.t, p),
            "alpha": balanced(self.alpha, p),
            "alpha_satisfies_cubic": self.alpha_satisfies_cubic,
            "n_lines": self.n_lines,
        }


@dataclass
class NodalityCounts:
    nodes: int
    mult: int
    all_nodal: bool
    degenerate: bool = False


@dataclass
class SearchHit:
    values: tuple
    plane_nodes: int
    axis_nodes: int
    nodes: int = None
    all_nodal: bool = None
    line: LineSplit = None

    def to_json_dict(self, p):
        return {
            "params": [balanced(v, p) for v in self.values],
            "plane_nodes": self.plane_nodes,
            "axis_nodes": self.axis_nodes,
            "nodes": self.nodes,
            "all_nodal": self.all_nodal,
            "line": self.line.to_json_dict(p) if self.line else None,
        }


@dataclass
class SearchReport:
    task: SearchTask
    scanned: int
    degenerate: int
    pruned: int
    histogram: dict
    hits: list
    elapsed_s: float
    chunks_total: int
    chunks_resumed: int

    @property
    def max_plane_nodes(self):
        return max(self.histogram) if self.histogram else 0

    @property
    def max_node_count(self):
        """Largest verified true node count among materialized hits.

        Only meaningful when min_nodes <= 15: below the materialization
        threshold the node count is bounded by the multiplicity, so no
        unmaterialized tuple can beat a verified hit at 15.
        """
        counted = [h.nodes for h in self.hits if h.nodes is not None]
        return max(counted) if counted else None

    def to_json_dict(self):
        t = self.task
        return {
            "schema": 1,
            "kind": "search-report",
            "minimal_polynomial": ALPHA_CUBIC_DISPLAY,
            "prime": t.prime,
            "mode": t.mode,
            "sample_size": t.sample_size,
            "seed": t.seed,
            "min_nodes": t.min_nodes,
            "space_size": t.space_size,
            "scanned": self.scanned,
            "degenerate": self.degenerate,
            "pruned": self.pruned,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "max_plane_nodes": self.max_plane_nodes,
            "max_node_count": self.max_node_count,
            "hits": [h.to_json_dict(t.prime) for h in self.hits],
            "elapsed_s": round(self.elapsed_s, 3),
            "chunks_total": self.chunks_total,
            "chunks_resumed": self.chunks_resumed,
        }


def _truncated_slice_count(gb, d):
    """Standard monomials of total degree d under the truncated staircase."""
    n = len(gb.ring.names)
    lead = gb.lead_exps()
    count = 0
    for exps in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in exps:
            e[i] += 1
        if not any(all(e[k] >= l[k] for k in range(n)) for l in lead):
            count += 1
    return count


def plane_node_count(params, budget=None, prefilter=False):
    """Projective singular-point count of the plane member, plus the part
    on the axis x=0.  Degenerate tuples (positive-dimensional singular
    locus) are reported as data, never raised."""
    R = plane_ring(params.field)
    J = jacobian(plane_curve(params, R))
    if prefilter:
        tgb = groebner_basis(J, budget=budget, degree_bound=PREFILTER_DEGREE)
        if _truncated_slice_count(tgb, PREFILTER_DEGREE) > PREFILTER_CAP:
            return PlaneCounts(None, None, None, pruned=True)
    gb = groebner_basis(J, budget=budget)
    d = dimension(gb)
    if d > 1:
        return PlaneCounts(None, None, True)
    plane = multiplicity(gb) if d == 1 else 0
    gbx = groebner_basis(list(gb.polys) + [R.var("x")], budget=budget)
    axis = multiplicity(gbx) if dimension(gbx) == 1 else 0
    return PlaneCounts(plane, axis, False)


def _saturate(polys, f, budget=None):
    """Reduced basis of the ideal saturated at f (iterated quotients)."""
    cur = groebner_basis(polys, budget=budget)
    while True:
        nxt = groebner_basis(ideal_quotient(list(cur.polys), f, budget=budget),
                             budget=budget)
        if [q.to_str() for q in nxt.polys] == [q.to_str() for q in cur.polys]:
            return cur
        cur = nxt


def plane_nodality(params, budget=None):
    """True node count of the plane member.

    The singular multiplicity overcounts when a singular point is worse
    than a node, so chart by chart the singular ideal is saturated away
    from the vanishing of the 2x2 Hessian; what survives is exactly the
    nodal points, each of local length one.  The chart w=1 is completed
    by the leftover locus w=0 inside z=1; the final point (1:0:0) never
    lies on the curve because its x^7 coefficient is 1.
    """
    K = params.field
    R = plane_ring(K)
    Sy = plane_curve(params, R)
    charts = []
    R2 = Ring(("x", "z"), K, Degrevlex())
    f = Sy.substitute({"w": R.one}).map_to(R2)
    charts.append(([f] + jacobian(f), hessian_det(f)))
    R2b = Ring(("x", "w"), K, Degrevlex())
    fb = Sy.substitute({"z": R.one}).map_to(R2b)
    charts.append(([R2b.var("w"), fb] + jacobian(fb), hessian_det(fb)))
    total = 0
    nodes = 0
    for gens, h2 in charts:
        gb = groebner_basis(gens, budget=budget)
        if gb.is_unit_ideal():
            continue
        if dimension(gb) > 0:
            return NodalityCounts(None, None, False, True)
        total += multiplicity(gb)
        if h2.is_zero():
            continue
        sat = _saturate(list(gb.polys), h2, budget=budget)
        if not sat.is_unit_ideal():
            nodes += multiplicity(sat)
    return NodalityCounts(nodes, total, nodes == total)


def detect_line_split(params, hit=None):
    """Probe the plane member for a linear factor z - t*x + w.

    Scans every slope, keeps divisors whose recovered invariant
    alpha = a4*t^3 + t satisfies t*alpha^2 + t - 1 = 0, and returns the
    first such (t, alpha) together with whether alpha is a root of the
    cubic 7a^3+7a+1.  Returns None when no admissible line divides; a
    maximal tuple without a split is data, not an error.
    """
    if hit is not None and hit.plane_nodes is not None \
            and hit.plane_nodes < SPLIT_THRESHOLD:
        raise ValueError("line detection is for maximal hits only")
    K = params.field
    R = plane_ring(K)
    Sy = plane_curve(params, R)
    x, w = R.var("x"), R.var("w")
    a4 = params.a4
    zero = K.from_int(0)
    admissible = []
    n_lines = 0
    for u in range(K.p):
        ue = FieldElement(K, K.from_int(u))
        if not Sy.substitute({"z": (-ue) * x - w}).is_zero():
            continue
        n_lines += 1
        t = -ue
        if slope_constraint_residue(a4, t).value == zero:
            admissible.append(t)
    if not admissible:
        return None
    t = admissible[0]
    alpha = alpha_of_slope(a4, t)
    cubic = (7 * alpha**3 + 7 * alpha + 1).value == zero
    return LineSplit(int(t.value), int(alpha.value), cubic, n_lines)


# ---------------------------------------------------------------------------
# chunked scan


def _scan_tuples(p, values_iter, min_nodes, budget, prefilter):
    K = PrimeField(p)
    hist = {}
    degenerate = 0
    pruned = 0
    hits = []
    scanned = 0
    for vals in values_iter:
        scanned += 1
        params = FamilyParams(K, vals)
        R = plane_ring(K)
        J = jacobian(plane_curve(params, R))
        if prefilter:
            tgb = groebner_basis(J, budget=budget,
                                 degree_bound=PREFILTER_DEGREE)
            s = _truncated_slice_count(tgb, PREFILTER_DEGREE)
            if s < min_nodes or s > PREFILTER_CAP:
                pruned += 1
                continue
        gb = groebner_basis(J, budget=budget)
        d = dimension(gb)
        if d > 1:
            degenerate += 1
            continue
        n = multiplicity(gb) if d == 1 else 0
        hist[n] = hist.get(n, 0) + 1
        if n >= min_nodes:
            hits.append(list(vals))
    return {"scanned": scanned, "hist": hist, "degenerate": degenerate,
            "pruned": pruned, "hits": hits}


def _chunk_worker(job):
    kind, chunk_id, p, payload, min_nodes, budget, prefilter = job
    if kind == "exhaustive":
        a1, a2, r3, r4, r5 = payload
        it = ((a1, a2, b3, b4, b5)
              for b3 in r3 for b4 in r4 for b5 in r5)
    else:
        it = (tuple(v) for v in payload)
    out = _scan_tuples(p, it, min_nodes, budget, prefilter)
    out["chunk"] = chunk_id
    return out


def _index_to_values(idx, ranges):
    vals = []
    for rng in reversed(ranges):
        idx, r = divmod(idx, len(rng))
        vals.append(rng[r])
    return tuple(reversed(vals))


def _build_jobs(task):
    if task.mode == "exhaustive":
        r1, r2, r3, r4, r5 = task.ranges
        jobs = []
        for a1 in r1:
            for a2 in r2:
                cid = f"{a1},{a2}"
                jobs.append(("exhaustive", cid, task.prime,
                             (a1, a2, r3, r4, r5), task.min_nodes,
                             task.budget, task.prefilter))
        return jobs
    rng = random.Random(task.seed)
    n = min(task.sample_size, task.space_size)
    picks = sorted(rng.sample(range(task.space_size), n))
    tuples = [_index_to_values(i, task.ranges) for i in picks]
    jobs = []
    for b in range(0, len(tuples), SAMPLE_CHUNK):
        cid = f"block{b // SAMPLE_CHUNK}"
        jobs.append(("sample", cid, task.prime, tuples[b:b + SAMPLE_CHUNK],
                     task.min_nodes, task.budget, task.prefilter))
    return jobs


def _checkpoint_header(task):
    return {"version": CHECKPOINT_VERSION, "kind": "search-checkpoint",
            "prime": task.prime, "chunk_on": "a1,a2",
            "fingerprint": task.fingerprint()}


def _load_checkpoint(path, task):
    done = {}
    if not path or not os.path.exists(path):
        return done
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        return done
    header = json.loads(lines[0])
    want = _checkpoint_header(task)
    if header != want:
        raise SearchResumeError(
            f"checkpoint at {path} was written for a different scan "
            f"(header {header} != {want})")
    for ln in lines[1:]:
        rec = json.loads(ln)
        rec["hist"] = {int(k): v for k, v in rec["hist"].items()}
        done[rec["chunk"]] = rec
    return done


def run_search(task, checkpoint_path=None, progress=None):
    """Execute the scan and return a ranked SearchReport.

    The report is a pure function of the task: chunk results are merged
    in canonical chunk order whatever the completion order, so any
    thread count and any resume history produce identical output.  Every
    materialized hit is re-verified in-process by an independent
    plane_node_count call before ranking.
    """
    t0 = time.monotonic()
    jobs = _build_jobs(task)
    done = _load_checkpoint(checkpoint_path, task)
    resumed = len([j for j in jobs if j[1] in done])
    todo = [j for j in jobs if j[1] not in done]

    sink = None
    if checkpoint_path:
        fresh = not done
        sink = open(checkpoint_path, "a", encoding="utf-8")
        if fresh:
            sink.write(json.dumps(_checkpoint_header(task),
                                  sort_keys=True) + "\n")
            sink.flush()

    def record(res):
        done[res["chunk"]] = res
        if sink:
            sink.write(json.dumps(res, sort_keys=True) + "\n")
            sink.flush()
        if progress:
            progress({"chunks_done": len(done), "chunks_total": len(jobs)})

    try:
        if task.threads > 1 and len(todo) > 1:
            ctx = get_context("fork")
            with ctx.Pool(task.threads) as pool:
                for res in pool.imap_unordered(_chunk_worker, todo):
                    record(res)
        else:
            for job in todo:
                record(_chunk_worker(job))
    finally:
        if sink:
            sink.close()

    hist = {}
    degenerate = 0
    pruned = 0
    scanned = 0
    raw_hits = []
    for job in jobs:  # canonical chunk order
        rec = done[job[1]]
        scanned += rec["scanned"]
        degenerate += rec["degenerate"]
        pruned += rec["pruned"]
        for k, v in rec["hist"].items():
            hist[k] = hist.get(k, 0) + v
        raw_hits.extend(tuple(v) for v in rec["hits"])

    K = PrimeField(task.prime)
    hits = []
    for vals in raw_hits:
        params = FamilyParams(K, vals)
        counts = plane_node_count(params, budget=task.budget)
        if counts.degenerate or counts.plane_nodes < task.min_nodes:
            raise AssertionError(
                f"re-verification disagrees with scan at {vals}")
        nod = plane_nodality(params, budget=task.budget)
        if nod.degenerate or nod.mult != counts.plane_nodes:
            raise AssertionError(
                f"chart decomposition disagrees with projective count "
                f"at {vals}: {nod} vs {counts}")
        hit = SearchHit(vals, counts.plane_nodes, counts.axis_nodes,
                        nod.nodes, nod.all_nodal)
        if hit.plane_nodes >= SPLIT_THRESHOLD:
            hit.line = detect_line_split(params, hit)
        hits.append(hit)
    hits.sort(key=lambda h: (-h.plane_nodes, h.values))

    return SearchReport(task, scanned, degenerate, pruned, hist, hits,
                        time.monotonic() - t0, len(jobs), resumed)


def render_tsv(report):
    """Tab-separated hit table in the layout of the published tuples."""
    p = report.task.prime
    rows = ["field\ta1\ta2\ta3\ta4\ta5\tline\talpha\t"
            "plane_nodes\taxis_nodes\tnodes"]
    for h in report.hits:
        vals = "\t".join(str(balanced(v, p)) for v in h.values)
        if h.line:
            line = format_line(balanced(h.line.t, p))
            alpha = str(balanced(h.line.alpha, p))
        else:
            line = "-"
            alpha = "-"
        rows.append(f"F{p}\t{vals}\t{line}\t{alpha}\t"
                    f"{h.plane_nodes}\t{h.axis_nodes}\t{h.nodes}")
    return "\n".join(rows) + "\n"


def format_line(t):
    """Render the split line z = t*x - w for a symmetric representative."""
    if t == 1:
        return "z=x-w"
    if t == -1:
        return "z=-x-w"
    return f"z={t}x-w"
