"""Computing F(m), the largest size of a valid set in Z_m.

Valid sets are independent sets of the circulant conflict graph, i.e. cliques of
its complement (the *allowed* graph, a ~ b iff a - b is neither a square nor
minus a square).  The exact search uses two symmetries of that graph:

* translations, so some maximum set contains 0;
* multiplication by units u with u or -u a square of a unit.  These fix 0 and
  permute the allowed differences, so the second element of the set can be
  taken from a list of orbit representatives.  Once the representative r has
  been searched, no later search needs to touch r's orbit again.

After F(m) is known a second pass finds the lexicographically smallest
maximum set, which always contains 0.
"""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from . import _kernel as K
from .core import VERTEX_CAP, CandidateSet, as_modulus, forbidden_set
from .errors import TooLarge
from .modarith import Modulus

log = logging.getLogger(__name__)

ORACLE_LIMIT = 40
DEFAULT_BUDGET_NODES = 10**8
DEFAULT_BUDGET_SECS = 60.0
_CHUNK = 200_000


@dataclass
class SearchResult:
    m: int
    best_set: CandidateSet
    size: int
    exact: bool
    nodes_explored: int = 0
    wall_time: float = 0.0
    method: str = "bnb"
    lex_smallest: bool = True

    def to_record(self) -> dict:
        """The cache / CLI record: ``{"m", "F", "exact", "witness"}``."""
        return {"m": self.m, "F": self.size, "exact": self.exact, "witness": list(self.best_set.elements)}


class Budget:
    def __init__(self, nodes: int | None = DEFAULT_BUDGET_NODES, secs: float | None = DEFAULT_BUDGET_SECS):
        self.nodes = nodes if nodes is not None else 2**62
        self.secs = secs if secs is not None else float("inf")
        self.used = 0
        self.t0 = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.t0

    def exhausted(self) -> bool:
        return self.used >= self.nodes or self.elapsed >= self.secs

    def quota(self) -> int:
        return max(0, min(_CHUNK, self.nodes - self.used))


# ---------------------------------------------------------------- oracle


def brute_force_oracle(m, units_only: bool = False) -> SearchResult:
    """Exhaustive include/exclude enumeration over all subsets; only independence prunes.

    Independent of the branch-and-bound path on purpose: no symmetry, no colouring.
    """
    t0 = time.perf_counter()
    modulus = as_modulus(m)
    n = modulus.m
    if n > ORACLE_LIMIT:
        raise TooLarge(f"oracle limited to m <= {ORACLE_LIMIT}, got {n}")
    sq = forbidden_set(modulus, units_only).squares
    conflict = [0] * n
    for a in range(n):
        for b in range(n):
            if a != b and ((a - b) % n in sq or (b - a) % n in sq):
                conflict[a] |= 1 << b
    best: list[int] = []
    chosen: list[int] = []
    nodes = 0

    def walk(v: int, banned: int):
        nonlocal best, nodes
        nodes += 1
        if len(chosen) > len(best):
            best = chosen[:]
        if v == n or len(chosen) + (n - v) <= len(best):
            return
        if not (banned >> v) & 1:
            chosen.append(v)
            walk(v + 1, banned | conflict[v])
            chosen.pop()
        walk(v + 1, banned)

    walk(0, 0)
    A = CandidateSet(modulus, tuple(best), units_only)
    return SearchResult(n, A, len(best), True, nodes, time.perf_counter() - t0, "oracle")


# ---------------------------------------------------------------- greedy


def greedy_lower(m, order: str | Sequence[int] = "natural", seed: int = 0,
                 units_only: bool = False) -> CandidateSet:
    """A maximal valid set built greedily along ``order``.

    ``order`` is ``"natural"`` (0, 1, 2, ...), ``"random"`` (seeded shuffle) or an
    explicit vertex sequence.
    """
    modulus = as_modulus(m)
    n = modulus.m
    if order == "natural":
        seq: Sequence[int] = range(n)
    elif order == "random":
        seq = list(range(n))
        random.Random(seed).shuffle(seq)
    else:
        seq = [int(v) % n for v in order]
    closure = forbidden_set(modulus, units_only).symmetric_closure
    chosen: list[int] = []
    for v in seq:
        if v not in chosen and all((v - a) % n not in closure for a in chosen):
            chosen.append(v)
    return CandidateSet(modulus, tuple(chosen), units_only)


# ---------------------------------------------------------------- exact search


def _allowed_indicator(modulus: Modulus, units_only: bool) -> np.ndarray:
    closure = forbidden_set(modulus, units_only).symmetric_closure
    allow = np.ones(modulus.m, dtype=bool)
    allow[0] = False
    allow[list(closure)] = False
    return allow


def _pack(verts: np.ndarray, allow: np.ndarray, m: int) -> np.ndarray:
    """Bitset adjacency of the allowed graph induced on ``verts`` (in that order)."""
    diff = (verts[None, :] - verts[:, None]) % m
    return _pack_bool(allow[diff])


def _full_mask(k: int) -> np.ndarray:
    W = (k + 63) // 64
    bits = np.zeros(W * 64, dtype=bool)
    bits[:k] = True
    return np.packbits(bits, bitorder="little").view("<u8").astype(np.uint64)


def _depth_bound(adj: np.ndarray, P0: np.ndarray) -> int:
    k, W = adj.shape
    order = np.zeros(k, np.int64)
    bnd = np.zeros(k, np.int64)
    cnt = K.color_sort(adj, P0.copy(), order, bnd, np.zeros(W, np.uint64), np.zeros(W, np.uint64))
    return int(bnd[cnt - 1]) if cnt else 0


def _max_clique(adj: np.ndarray, beat: int, budget: Budget) -> tuple[list[int] | None, bool]:
    """Largest clique of size > ``beat`` in ``adj``; ``(None, True)`` if none exists."""
    k, W = adj.shape
    P0 = _full_mask(k)
    D = _depth_bound(adj, P0) + 2
    if D - 2 <= beat:
        return None, True
    P = np.zeros((D, W), np.uint64)
    order = np.zeros((D, k), np.int64)
    bnd = np.zeros((D, k), np.int64)
    pos = np.zeros(D, np.int64)
    R = np.zeros(D, np.int64)
    bestset = np.zeros(D, np.int64)
    U = np.zeros(W, np.uint64)
    Q = np.zeros(W, np.uint64)
    state = np.zeros(8, np.int64)
    state[K.BEST] = beat
    status = K.RUNNING
    while status == K.RUNNING:
        if budget.exhausted():
            break
        before = state[K.NODES]
        status = K.max_clique_run(adj, P0, P, order, bnd, pos, R, bestset, U, Q, state, budget.quota())
        budget.used += int(state[K.NODES] - before)
    size = int(state[K.BEST])
    found = [int(x) for x in bestset[:size]] if size > beat else None
    return found, status == K.DONE


def _lex_clique(adj: np.ndarray, target: int, budget: Budget) -> tuple[list[int] | None, bool]:
    k, W = adj.shape
    P0 = _full_mask(k)
    D = target + 2
    P = np.zeros((D, W), np.uint64)
    C = np.zeros((D, W), np.uint64)
    order = np.zeros((D, k), np.int64)
    bnd = np.zeros((D, k), np.int64)
    R = np.zeros(D, np.int64)
    U = np.zeros(W, np.uint64)
    Q = np.zeros(W, np.uint64)
    state = np.zeros(8, np.int64)
    status = K.RUNNING
    while status == K.RUNNING:
        if budget.exhausted():
            return None, False
        before = state[K.NODES]
        status = K.lex_clique_run(adj, P0, target, P, C, order, bnd, R, U, Q, state, budget.quota())
        budget.used += int(state[K.NODES] - before)
    if state[K.FOUND]:
        return [int(x) for x in R[:target]], True
    return None, True


def multiplier_group(modulus: Modulus) -> list[int]:
    """Units u with u or -u a square of a unit: automorphisms of the graph fixing 0."""
    m = modulus.m
    sq = {y * y % m for y in range(1, m) if gcd(y, m) == 1}
    return sorted(sq | {(-u) % m for u in sq})


def allowed_orbits(modulus: Modulus, units_only: bool = False) -> list[tuple[int, frozenset[int]]]:
    """Orbit representatives (smallest element) of the allowed differences."""
    m = modulus.m
    allow = _allowed_indicator(modulus, units_only)
    H = multiplier_group(modulus)
    seen: set[int] = set()
    out = []
    for a in np.flatnonzero(allow):
        a = int(a)
        if a in seen:
            continue
        orb = frozenset(a * u % m for u in H)
        seen |= orb
        out.append((a, orb))
    return out


def canonical_form(A: CandidateSet) -> CandidateSet:
    """Lexicographically smallest image of A under translations and multipliers."""
    m = A.modulus.m
    best = None
    for u in multiplier_group(A.modulus) if m > 1 else [0]:
        scaled = [a * u % m for a in A.elements]
        for t in scaled:
            cand = tuple(sorted((x - t) % m for x in scaled))
            if best is None or cand < best:
                best = cand
    return CandidateSet(A.modulus, best or (), A.units_only)


def _extends(cand: np.ndarray, allow: np.ndarray, n: int, target: int, budget: Budget) -> bool | None:
    """Whether the allowed graph on ``cand`` has a clique of size ``target`` (None: out of budget)."""
    if target == 0:
        return True
    if len(cand) < target:
        return False
    adj = _pack(cand, allow, n)
    deg = np.array([sum(int(w).bit_count() for w in row) for row in adj])
    adj = _pack(cand[np.lexsort((cand, -deg))], allow, n)
    found, complete = _lex_clique(adj, target, budget)
    if found is None and not complete:
        return None
    return found is not None


def _lex_witness(modulus: Modulus, allow: np.ndarray, F: int, orbits, budget: Budget) -> list[int] | None:
    """Lexicographically smallest valid set of size F, or ``None`` if the budget ran out.

    Built one element at a time: the next element is the least candidate y such
    that the chosen elements plus y still extend to a set of size F.  Rejected
    candidates cannot occur in any extension, so each test may search the whole
    remaining neighbourhood in whatever order suits the solver.  The set starts
    with 0, and for the second element extendability is constant on multiplier
    orbits, so each orbit is tested once.
    """
    n = modulus.m
    idx = np.arange(n)
    rep_of = {x: r for r, orb in orbits for x in orb}
    verdict: dict[int, bool] = {}
    chosen = [0]
    pool = np.flatnonzero(allow)
    while len(chosen) < F:
        need = F - len(chosen) - 1
        picked = False
        for y in pool:
            y = int(y)
            rest = pool[(pool > y) & allow[(pool - y) % n]]
            if len(chosen) == 1:
                r = rep_of[y]
                if r not in verdict:
                    ok = _extends(rest, allow, n, need, budget)
                    if ok is None:
                        return None
                    verdict[r] = ok
                ok = verdict[r]
            else:
                ok = _extends(rest, allow, n, need, budget)
                if ok is None:
                    return None
            if ok:
                chosen.append(y)
                pool = rest
                picked = True
                break
        if not picked:
            raise AssertionError(f"m={n}: {chosen} does not extend to size {F}")
    return chosen


def max_sdf_exact(m, budget_nodes: int | None = DEFAULT_BUDGET_NODES,
                  budget_secs: float | None = DEFAULT_BUDGET_SECS,
                  units_only: bool = False, lex_witness: bool = True,
                  vertex_cap: int | None = VERTEX_CAP) -> SearchResult:
    """Exact F(m) by branch and bound with colouring bounds.

    If the budget runs out the best set found so far is returned with
    ``exact=False``; an ``exact=True`` result is never a guess.
    """
    modulus = as_modulus(m)
    n = modulus.m
    if vertex_cap is not None and n > vertex_cap:
        raise TooLarge(f"m={n} exceeds vertex cap {vertex_cap}")
    budget = Budget(budget_nodes, budget_secs)
    allow = _allowed_indicator(modulus, units_only)

    incumbent = greedy_lower(modulus, units_only=units_only)
    best = len(incumbent)
    witness = list(incumbent.elements)
    exact = True
    excluded = np.zeros(n, dtype=bool)
    orbits = allowed_orbits(modulus, units_only)
    for r, orb in orbits:
        cand = np.flatnonzero(allow & allow[(np.arange(n) - r) % n] & ~excluded)
        cand = cand[cand != r]
        excluded[list(orb)] = True
        if len(cand) + 2 <= best:
            continue
        adj = _pack(cand, allow, n)
        deg = np.array([sum(int(w).bit_count() for w in row) for row in adj])
        by_degree = cand[np.lexsort((cand, -deg))]
        adj = _pack(by_degree, allow, n)
        found, complete = _max_clique(adj, best - 2, budget)
        if found is not None:
            best = len(found) + 2
            witness = [0, r] + [int(by_degree[i]) for i in found]
            log.debug("m=%d: F >= %d via representative %d", n, best, r)
        if not complete:
            exact = False
            break

    A = CandidateSet(modulus, tuple(witness), units_only)
    lex = False
    if exact and lex_witness:
        got = _lex_witness(modulus, allow, best, orbits, budget)
        if got is not None:
            A, lex = CandidateSet(modulus, tuple(got), units_only), True
    if not lex:
        A = canonical_form(A)
    assert A.valid and len(A) == best
    return SearchResult(n, A, best, exact, budget.used, budget.elapsed, "bnb", lex)


def _pack_bool(M: np.ndarray) -> np.ndarray:
    k = M.shape[0]
    W = (k + 63) // 64
    padded = np.zeros((k, W * 64), dtype=bool)
    padded[:, :k] = M
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").astype(np.uint64).reshape(k, W)


def max_clique_exact(M: np.ndarray) -> list[int]:
    """Lexicographically smallest maximum clique of a symmetric boolean adjacency matrix."""
    k = M.shape[0]
    if k == 0:
        return []
    adj = _pack_bool(np.asarray(M, dtype=bool))
    unlimited = Budget(None, None)
    found, _ = _max_clique(adj, 0, unlimited)
    size = len(found)
    lex, _ = _lex_clique(adj, size, unlimited)
    return lex
