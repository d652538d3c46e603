"""Command-line entry point: ``sdfkit <command> ...`` (or ``python -m sdfkit``).

Data goes to stdout in one write; logs go to stderr.  Usage and input errors
exit with status 2.  An exhausted search budget is not an error: the result is
printed with ``"exact": false``.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys

from . import bounds as B
from . import construct as C
from . import tournament as T
from .cache import FCache
from .config import load_config
from .core import CandidateSet, as_modulus, witness_from_json
from .errors import SdfError
from .modarith import factor_squarefree, odd_part, odd_squarefree_range
from .quadchar import CharProduct, factored_pair_sum, full_residue_pair_sum, s_D
from .report import BOUND_COLUMNS, TABLE_COLUMNS, bound_row, compute_F, to_csv
from .search import brute_force_oracle, greedy_lower, max_sdf_exact

log = logging.getLogger("sdfkit")


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"expected A..B, got {text!r}")
    return int(lo), int(hi)


def _modulus(args):
    m = args.m
    if getattr(args, "drop_even_part", False):
        m = odd_part(m)
    return factor_squarefree(m)


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def cmd_search(args, cfg, cache):
    modulus = _modulus(args)
    if args.greedy:
        A = greedy_lower(modulus, units_only=cfg.units_only)
        return _dump({"m": modulus.m, "F": len(A), "exact": False, "witness": list(A.elements)})
    if args.oracle:
        return _dump(brute_force_oracle(modulus, cfg.units_only).to_record())
    _, line, hit = compute_F(modulus, None if args.no_cache else cache,
                             cfg.budget_nodes, cfg.budget_secs, cfg.units_only, cfg.vertex_cap)
    log.info("cache %s for m=%d", "hit" if hit else "miss", modulus.m)
    return line + "\n"


def cmd_bounds(args, cfg, cache):
    c = args.c if args.c is not None else cfg.c
    if args.m is not None:
        modulus = _modulus(args)
        rec = cache.get(modulus.m) if cache is not None else None
        rep = B.bound_report(modulus, c=c, F=rec and rec["F"], F_exact=rec and rec["exact"])
        if args.csv:
            return to_csv([bound_row(modulus, c, rec and rec["F"], rec and rec["exact"])], BOUND_COLUMNS)
        out = rep.to_json()
        out["combined_branches"] = {
            k: (None if v is None else B.ceil_decimal(v)) for k, v in B.combined_bound(modulus, c).branches.items()
        }
        return _dump(out)
    lo, hi = _range(args.table)
    rows = []
    for m in odd_squarefree_range(lo, hi):
        rec = cache.get(m) if cache is not None else None
        rows.append(bound_row(m, c, rec and rec["F"], rec and rec["exact"]))
    if args.json:
        return "".join(_dump({k: v for k, v in r.items() if not k.startswith("_")}) for r in rows)
    return to_csv(rows, BOUND_COLUMNS)


def cmd_construct(args, cfg, cache):
    if args.kind == "product":
        with open(args.parts) as fh:
            parts = json.load(fh)
        sets = [witness_from_json(p) for p in parts]
        A = C.product_construct([(s.modulus, s) for s in sets])
        return _dump(A.to_json())
    if args.kind == "ramsey":
        trace = C.ramsey_trace(args.p)
        out = trace.result.to_json()
        out.update(pivots=list(trace.pivots), colour="square" if trace.colour == 1 else "nonsquare",
                   guarantee=C.ramsey_guarantee(args.p))
        return _dump(out)
    cert = C.pigeonhole_witness(_int_list(args.set), args.p, args.xi)
    return _dump({
        "p": cert.p, "xi": cert.xi, "pair1": list(cert.pair1), "pair2": list(cert.pair2),
        "value": cert.value, "residue_difference": list(cert.residue_difference),
        "nonresidue_difference": list(cert.nonresidue_difference), "verified": cert.verify(),
    })


def cmd_charsum(args, cfg, cache):
    modulus = _modulus(args)
    cp = CharProduct(modulus, tuple(_int_list(args.D)))
    A = CandidateSet(modulus, tuple(_int_list(args.set)))
    pairs = [(b1, b2) for b1 in A for b2 in A]
    mismatches = [[b1, b2] for b1, b2 in pairs if full_residue_pair_sum(b1, b2, cp) != factored_pair_sum(b1, b2, cp)]
    return _dump({
        "m": modulus.m, "D": list(cp.D), "p_D": cp.p_D, "set": list(A.elements), "S_D": s_D(A, cp),
        "pairs_checked": len(pairs), "factorization_ok": not mismatches, "mismatches": mismatches,
    })


def cmd_verify_proof(args, cfg, cache):
    rep = B.proof_inequality_report(_int_list(args.primes))
    args._exit = 0 if rep.passed else 1
    return _dump(rep.to_json())


def cmd_tournament(args, cfg, cache):
    if args.m is not None:
        modulus = _modulus(args)
        P = T.paley_product(modulus)
    else:
        k, n, seed = args.random
        rng = random.Random(seed)
        P = T.product([T.random_digraph(n, rng) for _ in range(k)])
    rec = T.verify_lemma(P, args.exhaustive_limit)
    out = rec.to_json()
    if args.m is not None:
        out["m"] = args.m
        out["alon_bound"] = B.alon_tournament_bound(args.m)
    args._exit = 0 if rec.holds else 1
    return _dump(out)


def cmd_table(args, cfg, cache):
    c = args.c if args.c is not None else cfg.c
    rows = []
    for m in odd_squarefree_range(args.min, args.max):
        rec, _, _ = compute_F(m, cache, cfg.budget_nodes, cfg.budget_secs, vertex_cap=cfg.vertex_cap)
        row = bound_row(m, c, rec["F"], rec["exact"])
        if row["_violations"]:
            log.error("m=%d: F=%d violates %s", m, rec["F"], row["_violations"])
            args._exit = 1
        rows.append(row)
    return to_csv(rows, TABLE_COLUMNS)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sdfkit", description="Square-difference-free sets in Z_m")
    ap.add_argument("--config", help="key = value file with budgets and caps")
    ap.add_argument("--cache", help="path of the fcache.jsonl file (SDFKIT_CACHE overrides)")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    def budget_flags(p):
        p.add_argument("--budget-nodes", type=int)
        p.add_argument("--budget-secs", type=float)

    def modulus_flag(p, required=True):
        p.add_argument("--m", type=int, required=required)
        p.add_argument("--drop-even-part", action="store_true", help="replace m by its odd part first")

    p = sub.add_parser("search", help="compute F(m)")
    modulus_flag(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="branch and bound (default)")
    mode.add_argument("--greedy", action="store_true")
    mode.add_argument("--oracle", action="store_true", help="exhaustive enumeration, m <= 40")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--units-only", action="store_true", default=None)
    budget_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="bound report for one m or a range")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--m", type=int)
    g.add_argument("--table", metavar="A..B")
    p.add_argument("--drop-even-part", action="store_true")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--c", type=str)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="explicit valid sets")
    csub = p.add_subparsers(dest="kind", required=True)
    q = csub.add_parser("product")
    q.add_argument("--parts", required=True, help='JSON list of {"m": .., "set": [..]}')
    q = csub.add_parser("ramsey")
    q.add_argument("--p", type=int, required=True)
    q = csub.add_parser("pigeonhole")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--set", required=True)
    q.add_argument("--xi", type=int)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("charsum", help="S_D and the pair-sum factorization check")
    modulus_flag(p)
    p.add_argument("--D", required=True, help="1-based prime indices, e.g. 1,2")
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_charsum)

    p = sub.add_parser("verify-proof", help="certified numeric inequalities for a prime tuple")
    p.add_argument("--primes", required=True)
    p.set_defaults(func=cmd_verify_proof)

    p = sub.add_parser("tournament", help="covering-family lemma checks")
    tsub = p.add_subparsers(dest="action", required=True)
    q = tsub.add_parser("verify")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--m", type=int)
    g.add_argument("--random", type=int, nargs=3, metavar=("K", "N", "SEED"))
    q.add_argument("--drop-even-part", action="store_true")
    q.add_argument("--exhaustive-limit", type=int, default=T.DEFAULT_EXHAUSTIVE_LIMIT)
    p.set_defaults(func=cmd_tournament)

    p = sub.add_parser("table", help="CSV of F(m) against every bound")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--min", type=int, default=3)
    p.add_argument("--c", type=str)
    budget_flags(p)
    p.set_defaults(func=cmd_table)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config).override(
            budget_nodes=getattr(args, "budget_nodes", None),
            budget_secs=getattr(args, "budget_secs", None),
            units_only=getattr(args, "units_only", None),
            cache=args.cache,
        )
        cache = FCache(cfg.cache)
        args._exit = 0
        out = args.func(args, cfg, cache)
    except (SdfError, UsageError, ValueError, OSError) as e:
        print(f"sdfkit: error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    sys.stdout.flush()
    return args._exit


def main():
    sys.exit(run())
