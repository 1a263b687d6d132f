"""Command-line front end for the search, verification, and derivation
pipelines.

Five subcommands: `search` scans parameter tuples over a prime field,
`verify` runs the six-step singularity audit (mod p or exact),
`derive` replays the characteristic-zero derivation of the parameter
condition, `alpha-real` isolates the real root of the defining cubic,
and `table1-check` re-verifies every bundled prime-field example.

Exit codes are contract values: 0 success, 1 expected counts not met,
2 invalid prime or usage, 3 work budget exhausted, 4 alpha not a root
of the defining cubic, 5 derivation mismatch against the published
formulas.  Every run is deterministic given its flags and seed; JSON
output always carries the schema version and the string form of the
defining cubic.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import realroot
from .derivation import (
    COND_DEGREE_CONTRACT,
    DerivationMismatchError,
    derivation_transcript,
)
from .family import (
    ALPHA_CUBIC_DISPLAY,
    BAD_CHARACTERISTICS,
    FamilyParams,
    KNOWN_NODAL_EXAMPLES,
    UnsupportedCharacteristicError,
    alpha_number_field,
    minpoly_roots_mod_p,
    nodal_params,
)
from .fields import FieldElement, PrimeField
from .groebner import BudgetExceededError
from .pipeline import run_pipeline
from .search import (
    SearchResumeError,
    SearchTask,
    balanced,
    detect_line_split,
    format_line,
    render_tsv,
    run_search,
)
from .univar import _is_probable_prime

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_PRIME = 2
EXIT_BUDGET = 3
EXIT_BAD_ALPHA = 4
EXIT_MISMATCH = 5

THREADS_ENV = "SEPTIQ_THREADS"

# pair-reduction cap for the exact nodality step when no budget is
# given: sized for a multi-hour run, not for CI
DEFAULT_EXACT_HESSIAN_BUDGET = 5_000_000


def _env_threads():
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        print(f"warning: ignoring non-integer {THREADS_ENV}={raw!r}",
              file=sys.stderr)
        return 1
    return n if n >= 1 else 1


def _check_prime(p):
    """Error string for an unusable characteristic, None when fine."""
    if p < 2 or not _is_probable_prime(p):
        return f"{p} is not prime"
    if p in BAD_CHARACTERISTICS:
        return (f"prime {p} appears among the construction's "
                "coefficients and exponents; the family degenerates")
    return None


def _deliver(args, payload, text):
    """Print text (or the JSON payload with --json); --out always
    receives the JSON artifact."""
    blob = json.dumps(payload, indent=2)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(blob + "\n")
    print(blob if args.json else text.rstrip("\n"))


def _parse_tol(text):
    try:
        if "e" in text.lower():
            mantissa, exp = text.lower().split("e", 1)
            tol = Fraction(mantissa) * Fraction(10) ** int(exp)
        else:
            tol = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse tolerance {text!r}")
    if tol <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return tol


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def cmd_search(args):
    msg = _check_prime(args.prime)
    if msg:
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_BAD_PRIME
    threads = args.threads if args.threads else _env_threads()
    try:
        task = SearchTask.make(
            args.prime,
            mode="sample" if args.sample else "exhaustive",
            sample_size=args.sample or 0,
            seed=args.seed,
            threads=threads,
            min_nodes=args.min_nodes,
            budget=args.budget,
            prefilter=args.prefilter,
        )
    except (ValueError, UnsupportedCharacteristicError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PRIME
    try:
        report = run_search(task, checkpoint_path=args.resume)
    except SearchResumeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BudgetExceededError as exc:
        print(f"error: work budget exhausted ({exc}); raise --budget "
              "or resume from the checkpoint", file=sys.stderr)
        return EXIT_BUDGET

    hist = " ".join(f"{k}:{v}" for k, v in sorted(report.histogram.items()))
    lines = [
        f"prime {task.prime}  mode {task.mode}  scanned {report.scanned}"
        f"/{task.space_size}  degenerate {report.degenerate}"
        f"  pruned {report.pruned}",
        f"node histogram (>= {task.min_nodes}): {hist or 'empty'}",
        f"max plane nodes: {report.max_plane_nodes}"
        f"  hits: {len(report.hits)}  elapsed {report.elapsed_s:.1f}s",
        "",
        render_tsv(report),
    ]
    _deliver(args, report.to_json_dict(), "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _report_lines(report):
    out = []
    for s in report.steps:
        shown = {k: v for k, v in s.data.items() if k != "residue"}
        out.append(f"  {s.name}: {'ok' if s.ok else 'FAIL'}"
                   f"  {shown}  ({s.ms:.0f} ms)")
    out.append(f"plane nodes {report.plane_nodes}"
               f"  axis nodes {report.axis_nodes}"
               f"  lifted total {report.lifted_total}"
               f"  all nodal {report.all_nodes}")
    for note in report.notes:
        out.append(f"note: {note}")
    return out


def _budget_exhausted(report):
    return report.all_nodes is None and any(
        "budget exhausted" in n for n in report.notes)


def cmd_verify(args):
    if args.mode == "mod-p":
        if args.prime is None or args.alpha is None:
            print("error: --mod-p needs --prime and --alpha",
                  file=sys.stderr)
            return EXIT_BAD_PRIME
        msg = _check_prime(args.prime)
        if msg:
            print(f"error: {msg}", file=sys.stderr)
            return EXIT_BAD_PRIME
        p = args.prime
        roots = minpoly_roots_mod_p(p)
        a = args.alpha % p
        if a not in roots:
            shown = ", ".join(str(balanced(r, p)) for r in roots) or "none"
            print(f"error: alpha={args.alpha} is not a root of "
                  f"{ALPHA_CUBIC_DISPLAY} mod {p} (roots: {shown})",
                  file=sys.stderr)
            return EXIT_BAD_ALPHA
        K = PrimeField(p)
        params = nodal_params(FieldElement(K, K.from_int(a)))
        expected = 100 if p == 5 else 99
    else:
        if args.prime is not None or args.alpha is not None:
            print("error: --exact takes no --prime / --alpha "
                  "(alpha is the formal root)", file=sys.stderr)
            return EXIT_BAD_PRIME
        K = alpha_number_field()
        params = nodal_params(K.gen)
        expected = 99

    hessian_budget = args.hessian_budget
    if hessian_budget is None and args.mode == "exact":
        hessian_budget = args.budget or DEFAULT_EXACT_HESSIAN_BUDGET
    try:
        report = run_pipeline(params, budget=args.budget,
                              hessian_budget=hessian_budget)
    except BudgetExceededError as exc:
        print(f"error: work budget exhausted ({exc}); raise --budget, or "
              "fall back to multi-prime verification: "
              "`septiq table1-check`", file=sys.stderr)
        return EXIT_BUDGET

    counts_ok = (report.point_check and not report.degenerate
                 and report.lifted_total == expected)
    lines = _report_lines(report)
    if _budget_exhausted(report):
        lines.append(
            "verdict: counts "
            + ("match" if counts_ok else "MISMATCH")
            + "; nodality unverified (budget); fall back to "
            "multi-prime verification: `septiq table1-check`")
        _deliver(args, report.to_json_dict(), "\n".join(lines))
        return EXIT_BUDGET
    ok = counts_ok and report.all_nodes is True
    lines.append("verdict: "
                 + (f"{expected} nodes, all nodal" if ok
                    else f"expected {expected} nodes all nodal, got "
                    f"lifted {report.lifted_total}, "
                    f"all_nodes {report.all_nodes}"))
    _deliver(args, report.to_json_dict(), "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# derive
# ---------------------------------------------------------------------------

def cmd_derive(args):
    try:
        transcript = derivation_transcript(
            budget=args.budget,
            include_elimination=args.check_elimination)
    except BudgetExceededError as exc:
        print(f"error: work budget exhausted ({exc})", file=sys.stderr)
        return EXIT_BUDGET
    except DerivationMismatchError as exc:
        print(f"error: derivation mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH

    cond = transcript["condition"]
    beta_red = transcript["beta_squared_reduced"]
    slope = transcript["slope_parametrization"]
    lines = [
        f"minimal polynomial: {transcript['minimal_polynomial']}",
        f"conic: derived, residual basis degrees "
        f"{transcript['residual_basis_degrees']}",
        f"beta^2: closed form confirmed, reduces to "
        f"{beta_red[0] if len(beta_red) == 1 else beta_red} mod the cubic",
        f"slope parametrization: "
        f"{'ok' if all(slope.values()) else 'FAIL'}",
    ]
    for tag in ("+", "-"):
        sr = cond["sign_results"][tag]
        lines.append(
            f"branch {tag}: division "
            + ("exact" if sr.get("z3_division_exact") else "FAILED")
            + f", remainder degree {sr.get('remainder_degree')}")
    degree_ok = cond["degree_matches_contract"]
    div_ok = cond["divisible_by_minimal_polynomial"]
    lines.append(
        f"condition degree: {cond['degree']}"
        f" (contract {cond['contract_degree']})"
        f" {'ok' if degree_ok else 'MISMATCH'}")
    lines.append(
        f"divisible by {transcript['minimal_polynomial']}: "
        f"{'ok' if div_ok else 'FAIL'}"
        f"  (cofactor degree {cond['cofactor_degree']})")
    if args.check_table1:
        vanish = 0
        for row in cond["row_checks"]:
            mark = "ok" if row["cond_mod_p"] == 0 else "FAIL"
            vanish += row["cond_mod_p"] == 0
            lines.append(
                f"  p={row['p']} alpha={row['alpha']}: "
                f"cond={row['cond_mod_p']} "
                f"cofactor={row['cofactor_mod_p']} {mark}")
        lines.append(f"table rows vanishing: {vanish}"
                     f"/{len(cond['row_checks'])}")
    if args.both_signs:
        agree = all(cond["sign_results"][t].get("z3_division_exact")
                    for t in ("+", "-"))
        lines.append("both branch signs divide cleanly and agree: "
                     + ("yes" if agree else "no"))
    if args.check_elimination:
        elim = transcript["slope_elimination"]
        primes = ", ".join(str(r["p"]) for r in elim["primes"])
        lines.append(
            f"slope elimination rerun mod {primes}: "
            + ("matches " + elim["eliminant"]
               if elim["all_match"] else "MISMATCH"))

    ok = degree_ok and div_ok
    lines.append("verdict: " + ("derivation matches the published values"
                                if ok else "formula mismatch"))
    _deliver(args, transcript, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# alpha-real
# ---------------------------------------------------------------------------

def cmd_alpha_real(args):
    cubic = realroot.alpha_cubic_coeffs()
    chain = realroot.sturm_chain(cubic)
    bound = realroot.root_bound(cubic)
    n_roots = realroot.count_real_roots(cubic, -bound, bound, chain=chain)
    lo, hi = realroot.isolate_unique_real_root(cubic, args.tol)
    digits = 1
    while Fraction(1, 10**digits) > args.tol and digits < 50:
        digits += 1
    digits += 2
    payload = {
        "schema": 1,
        "kind": "alpha-real",
        "minimal_polynomial": ALPHA_CUBIC_DISPLAY,
        "real_roots": n_roots,
        "tol": str(args.tol),
        "interval": [str(lo), str(hi)],
        "decimal": [realroot.decimal_str(lo, digits),
                    realroot.decimal_str(hi, digits)],
    }
    text = "\n".join([
        f"real roots of {ALPHA_CUBIC_DISPLAY}: {n_roots}",
        f"isolating interval: [{lo}, {hi}]",
        f"decimal: [{payload['decimal'][0]}, {payload['decimal'][1]}]"
        f"  (width <= {args.tol})",
    ])
    _deliver(args, payload, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# table1-check
# ---------------------------------------------------------------------------

def cmd_table1_check(args):
    rows = []
    lines = ["field\ta1\ta2\ta3\ta4\ta5\tline\talpha\t"
             "plane\taxis\tlifted\tstatus"]
    all_ok = True
    for p, values, alpha, t in KNOWN_NODAL_EXAMPLES:
        K = PrimeField(p)
        params = FamilyParams(K, values, alpha=K.from_int(alpha))
        try:
            report = run_pipeline(params, budget=args.budget)
        except BudgetExceededError as exc:
            print(f"error: work budget exhausted at p={p} ({exc})",
                  file=sys.stderr)
            return EXIT_BUDGET
        split = detect_line_split(params)
        split_ok = (split is not None
                    and balanced(split.t, p) == t
                    and balanced(split.alpha, p) == alpha
                    and split.alpha_satisfies_cubic)
        counts_ok = (report.plane_nodes == 15 and report.axis_nodes == 1
                     and report.lifted_total == 99
                     and report.all_nodes is True)
        ok = split_ok and counts_ok
        all_ok = all_ok and ok
        vals = "\t".join(str(v) for v in values)
        lines.append(
            f"F{p}\t{vals}\t{format_line(t)}\t{alpha}\t"
            f"{report.plane_nodes}\t{report.axis_nodes}\t"
            f"{report.lifted_total}\t{'ok' if ok else 'FAIL'}")
        rows.append({
            "p": p,
            "params": list(values),
            "line": format_line(t),
            "alpha": alpha,
            "plane_nodes": report.plane_nodes,
            "axis_nodes": report.axis_nodes,
            "lifted_total": report.lifted_total,
            "all_nodes": report.all_nodes,
            "split_recovered": split_ok,
            "ok": ok,
        })
    lines.append(f"rows passing: {sum(r['ok'] for r in rows)}/{len(rows)}")
    payload = {
        "schema": 1,
        "kind": "table1-check",
        "minimal_polynomial": ALPHA_CUBIC_DISPLAY,
        "rows": rows,
        "all_ok": all_ok,
    }
    _deliver(args, payload, "\n".join(lines))
    return EXIT_OK if all_ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="septiq",
        description="Exact search and verification for a 99-node "
                    "degree-7 surface family.")
    sub = ap.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--json", action="store_true",
                       help="print the JSON report instead of text")
        p.add_argument("--out", metavar="PATH",
                       help="also write the JSON report to PATH")

    ps = sub.add_parser(
        "search", help="scan parameter tuples over a prime field")
    ps.add_argument("--prime", type=int, required=True)
    mode = ps.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true",
                      help="scan every tuple (default)")
    mode.add_argument("--sample", type=int, metavar="N",
                      help="scan N seeded random tuples instead")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--threads", type=int, default=0,
                    help=f"worker processes (default ${THREADS_ENV} or 1)")
    ps.add_argument("--budget", type=int, default=None,
                    help="pair-reduction cap per basis computation")
    ps.add_argument("--min-nodes", type=int, default=13,
                    help="materialize hits at or above this plane count")
    ps.add_argument("--prefilter", action="store_true",
                    help="skip tuples by a truncated degree bound first")
    ps.add_argument("--resume", metavar="PATH",
                    help="checkpoint file to append to and resume from")
    output_flags(ps)
    ps.set_defaults(fn=cmd_search)

    pv = sub.add_parser(
        "verify", help="run the six-step singularity audit")
    vmode = pv.add_mutually_exclusive_group(required=True)
    vmode.add_argument("--mod-p", dest="mode", action="store_const",
                       const="mod-p", help="verify over a prime field")
    vmode.add_argument("--exact", dest="mode", action="store_const",
                       const="exact",
                       help="verify over the cubic number field")
    pv.add_argument("--prime", type=int)
    pv.add_argument("--alpha", type=int,
                    help="root of the defining cubic mod the prime")
    pv.add_argument("--budget", type=int, default=None)
    pv.add_argument("--hessian-budget", type=int, default=None,
                    help="separate cap for the final nodality step")
    output_flags(pv)
    pv.set_defaults(fn=cmd_verify)

    pd = sub.add_parser(
        "derive", help="replay the characteristic-zero derivation")
    pd.add_argument("--budget", type=int, default=None)
    pd.add_argument("--check-table1", action="store_true",
                    help="list the condition's value at every bundled "
                    "prime-field example")
    pd.add_argument("--both-signs", action="store_true",
                    help="report which branch signs divide cleanly")
    pd.add_argument("--check-elimination", action="store_true",
                    help="rerun the slope elimination over prime fields")
    output_flags(pd)
    pd.set_defaults(fn=cmd_derive)

    pa = sub.add_parser(
        "alpha-real", help="isolate the real root of the defining cubic")
    pa.add_argument("--tol", type=_parse_tol, default=Fraction(1, 10**8),
                    help="interval width bound (default 1e-8)")
    output_flags(pa)
    pa.set_defaults(fn=cmd_alpha_real)

    pt = sub.add_parser(
        "table1-check", help="re-verify every bundled prime-field example")
    pt.add_argument("--budget", type=int, default=None)
    output_flags(pt)
    pt.set_defaults(fn=cmd_table1_check)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
