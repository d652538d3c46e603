"""Cached F(m) lookups and the per-modulus table of F(m) against every bound."""
from __future__ import annotations

import csv
import io
import logging

import sympy as sp

from .bounds import bound_report, ceil_decimal
from .cache import FCache, dumps
from .core import VERTEX_CAP, CandidateSet, as_modulus
from .search import max_sdf_exact

log = logging.getLogger(__name__)

TABLE_COLUMNS = ("m", "n", "F", "exact", "theorem", "matolcsi_ruzsa", "alon", "combined", "min_bound", "slack")
BOUND_COLUMNS = ("m", "n", "F", "exact", "theorem", "matolcsi_ruzsa", "alon", "combined")


def compute_F(m, cache: FCache | None = None, budget_nodes=None, budget_secs=None,
              units_only: bool = False, vertex_cap: int | None = None) -> tuple[dict, str, bool]:
    """Return ``(record, json_line, from_cache)``.

    Exact cached records are reused as is; non-exact ones are recomputed with the
    current budget.  Records for ``units_only`` searches are never cached.
    """
    modulus = as_modulus(m)
    if cache is not None and not units_only:
        line = cache.get_line(modulus.m)
        if line is not None:
            rec = cache.get(modulus.m)
            if rec["exact"]:
                witness = CandidateSet(modulus, tuple(rec["witness"]))
                if not witness.valid or len(witness) != rec["F"]:
                    raise ValueError(f"corrupt cache record for m={modulus.m}")
                return rec, line, True
    res = max_sdf_exact(modulus, budget_nodes, budget_secs, units_only=units_only,
                        vertex_cap=VERTEX_CAP if vertex_cap is None else vertex_cap)
    log.info("m=%d F=%d exact=%s nodes=%d time=%.2fs", res.m, res.size, res.exact,
             res.nodes_explored, res.wall_time)
    rec = res.to_record()
    if cache is not None and not units_only:
        line = cache.put(rec)
    else:
        line = dumps(rec)
    return rec, line, False


def _fmt(entry) -> str:
    return "" if not entry.applicable else repr(ceil_decimal(entry.value))


def bound_row(m, c, F=None, exact=None) -> dict:
    rep = bound_report(m, c=c, F=F, F_exact=exact)
    row = {"m": rep.m, "n": rep.n, "F": "" if F is None else F, "exact": "" if exact is None else int(bool(exact))}
    for name in ("theorem", "matolcsi_ruzsa", "alon", "combined"):
        row[name] = _fmt(rep.entry(name))
    best = rep.min_applicable
    row["min_bound"] = repr(ceil_decimal(best.value))
    row["slack"] = "" if F is None else repr(float(sp.N(best.value - F, 20)))
    row["_violations"] = rep.violations()
    return row


def to_csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
