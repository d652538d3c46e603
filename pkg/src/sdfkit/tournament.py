"""Directed graphs, their products, covering families and the polynomial
argument bounding covering families by prod (d_i + 1).

A family S in a product is *covering* when every ordered pair (u, v) of
distinct members has some coordinate with (u_i, v_i) an arc.  Pairs (u, u)
are not required (a loop-free digraph could never cover them).
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .core import CandidateSet, ValidityCheck, as_modulus, is_valid_set
from .errors import InvalidSet, NotCovering, WrongResidueClass
from .linalg import bareiss_rank
from .modarith import is_prime, legendre
from .search import max_clique_exact

Vertex = tuple[int, ...]


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        vs = set(self.vertices)
        for x, y in self.edges:
            if x == y:
                raise ValueError(f"self-loop at {x}")
            if x not in vs or y not in vs:
                raise ValueError(f"arc ({x}, {y}) leaves the vertex set")

    @classmethod
    def from_arcs(cls, vertices: Iterable[int], arcs: Iterable[tuple[int, int]]) -> "Digraph":
        return cls(tuple(vertices), frozenset((int(x), int(y)) for x, y in arcs))

    @cached_property
    def out_neighbors(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for x, y in self.edges:
            out[x].append(y)
        return {v: tuple(sorted(ns)) for v, ns in out.items()}

    @cached_property
    def max_outdegree(self) -> int:
        return max((len(ns) for ns in self.out_neighbors.values()), default=0)

    def has_edge(self, x: int, y: int) -> bool:
        return (x, y) in self.edges

    def is_tournament(self) -> bool:
        vs = self.vertices
        return all(
            ((x, y) in self.edges) != ((y, x) in self.edges)
            for i, x in enumerate(vs) for y in vs[i + 1:]
        )

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": sorted([x, y] for x, y in self.edges)}

    @classmethod
    def from_json(cls, rec: dict | str) -> "Digraph":
        rec = json.loads(rec) if isinstance(rec, str) else rec
        return cls.from_arcs(rec["vertices"], (tuple(e) for e in rec["edges"]))


def paley_tournament(p: int) -> Digraph:
    """(x, y) is an arc iff x - y is a non-zero square mod p; needs p = 3 (mod 4)."""
    if not is_prime(p) or p % 4 != 3:
        raise WrongResidueClass(f"need a prime p = 3 (mod 4), got {p}")
    return Digraph.from_arcs(range(p), ((x, y) for x in range(p) for y in range(p) if legendre(x - y, p) == 1))


def cyclic_digraph(k: int) -> Digraph:
    """Arcs i -> i+1 (mod k); for k = 3 this is the cyclic tournament 0 -> 1 -> 2 -> 0."""
    return Digraph.from_arcs(range(k), ((i, (i + 1) % k) for i in range(k)))


def random_digraph(n: int, rng: random.Random, density: float | None = None) -> Digraph:
    density = rng.random() if density is None else density
    arcs = [(x, y) for x in range(n) for y in range(n) if x != y and rng.random() < density]
    return Digraph.from_arcs(range(n), arcs)


@dataclass(frozen=True)
class ProductGraph:
    factors: tuple[Digraph, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("need at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))

    @cached_property
    def vertices(self) -> list[Vertex]:
        return list(cartesian(*(f.vertices for f in self.factors)))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.max_outdegree for f in self.factors)

    @property
    def lemma_bound(self) -> int:
        return prod(d + 1 for d in self.degrees)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        """Arc of the product: distinct, and every coordinate equal or an arc."""
        return u != v and all(a == b or f.has_edge(a, b) for f, a, b in zip(self.factors, u, v))

    def covers(self, u: Vertex, v: Vertex) -> bool:
        """Some coordinate i has (u_i, v_i) in E_i."""
        return any(f.has_edge(a, b) for f, a, b in zip(self.factors, u, v))

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        V = self.vertices
        return [(u, v) for u in V for v in V if self.has_edge(u, v)]


def product(factors: Sequence[Digraph]) -> ProductGraph:
    return ProductGraph(tuple(factors))


def paley_product(m) -> ProductGraph:
    modulus = as_modulus(m)
    return product([paley_tournament(p) for p in modulus.primes])


def is_covering_family(S: Iterable[Vertex], P: ProductGraph) -> ValidityCheck:
    members = sorted({tuple(v) for v in S})
    for u in members:
        for v in members:
            if u != v and not P.covers(u, v):
                return ValidityCheck(False, (u, v))
    return ValidityCheck(True)


def polynomial_value(v: Vertex, x: Sequence[int], P: ProductGraph) -> int:
    """P_v(x) = prod_i prod_{j in N(v_i)} (x_i - j)."""
    out = 1
    for f, vi, xi in zip(P.factors, v, x):
        for j in f.out_neighbors[vi]:
            out *= xi - j
    return out


def alon_matrix(S: Sequence[Vertex], P: ProductGraph) -> list[list[int]]:
    """Rows indexed by v, columns by u: the value P_v(u)."""
    return [[polynomial_value(v, u, P) for u in S] for v in S]


def alon_polynomials_rank(S: Iterable[Vertex], P: ProductGraph) -> int:
    """Rank of the evaluation matrix of {P_v : v in S} on S, computed exactly.

    Each P_v is non-zero at v and vanishes at every other member, so the
    matrix is diagonal with a non-zero diagonal and the rank is |S|.
    """
    S = sorted({tuple(v) for v in S})
    chk = is_covering_family(S, P)
    if not chk:
        raise NotCovering(f"ordered pair {chk.pair} is not covered")
    M = alon_matrix(S, P)
    for i, row in enumerate(M):
        assert row[i] != 0, f"P_v vanishes at v={S[i]}"
        assert all(x == 0 for j, x in enumerate(row) if j != i), f"P_v does not vanish off v={S[i]}"
    return bareiss_rank(M)


def _poly_coeffs(roots: Sequence[int]) -> list[int]:
    """Coefficients (constant term first) of prod (x - r)."""
    c = [1]
    for r in roots:
        nxt = [0] * (len(c) + 1)
        for i, a in enumerate(c):
            nxt[i] -= r * a
            nxt[i + 1] += a
        c = nxt
    return c


def coefficient_vectors(S: Sequence[Vertex], P: ProductGraph) -> list[list[int]]:
    """Each P_v expanded in the monomial basis x^e with 0 <= e_i <= d_i."""
    degs = P.degrees
    vecs = []
    for v in S:
        vec = np.array([1], dtype=object)
        for f, vi, d in zip(P.factors, v, degs):
            c = _poly_coeffs(f.out_neighbors[vi])
            c = np.array(c + [0] * (d + 1 - len(c)), dtype=object)
            vec = np.multiply.outer(vec, c).ravel()
        vecs.append([int(x) for x in vec])
    return vecs


def coefficient_rank(S: Iterable[Vertex], P: ProductGraph) -> int:
    """Rank of the polynomials themselves inside the prod (d_i + 1)-dimensional space."""
    return bareiss_rank(coefficient_vectors(sorted({tuple(v) for v in S}), P))


def _compatibility(P: ProductGraph) -> np.ndarray:
    V = P.vertices
    k = len(V)
    cov = np.zeros((k, k), dtype=bool)
    for i, u in enumerate(V):
        for j, v in enumerate(V):
            if i != j:
                cov[i, j] = P.covers(u, v)
    return cov & cov.T


def max_covering_family(P: ProductGraph) -> list[Vertex]:
    """Exact largest covering family (lexicographically smallest among the largest).

    Covering families are exactly the cliques of the graph joining u, v when both
    (u, v) and (v, u) are covered, so this is an exhaustive maximum-clique search.
    """
    V = P.vertices
    return [V[i] for i in max_clique_exact(_compatibility(P))]


def random_covering_family(P: ProductGraph, seed: int = 0, restarts: int = 200) -> list[Vertex]:
    """Best maximal covering family over seeded random insertion orders with pair repair.

    After a greedy pass, every outsider that conflicts with exactly one member is
    swapped in for it when that lets another outsider join.
    """
    rng = random.Random(seed)
    V = P.vertices
    best: list[Vertex] = []
    for _ in range(restarts):
        order = V[:]
        rng.shuffle(order)
        fam: list[Vertex] = []
        for v in order:
            if all(P.covers(u, v) and P.covers(v, u) for u in fam):
                fam.append(v)
        improved = True
        while improved:
            improved = False
            for v in order:
                if v in fam:
                    continue
                bad = [u for u in fam if not (P.covers(u, v) and P.covers(v, u))]
                if len(bad) != 1:
                    continue
                trial = [u for u in fam if u != bad[0]] + [v]
                extra = [w for w in order if w not in trial
                         and all(P.covers(u, w) and P.covers(w, u) for u in trial)]
                if extra:
                    fam = trial + [extra[0]]
                    improved = True
                    break
        if len(fam) > len(best) or (len(fam) == len(best) and sorted(fam) < sorted(best)):
            best = sorted(fam)
    return best


@dataclass
class LemmaRecord:
    family: list[Vertex]
    size: int
    bound: int
    degrees: tuple[int, ...]
    exhaustive: bool
    rank: int
    coefficient_rank: int

    @property
    def holds(self) -> bool:
        return self.size <= self.bound and self.rank == self.size == self.coefficient_rank

    def to_json(self) -> dict:
        return {
            "family": [list(v) for v in self.family],
            "size": self.size,
            "bound": self.bound,
            "degrees": list(self.degrees),
            "exhaustive": self.exhaustive,
            "rank": self.rank,
            "coefficient_rank": self.coefficient_rank,
            "holds": self.holds,
        }


DEFAULT_EXHAUSTIVE_LIMIT = 2000


def verify_lemma(P: ProductGraph, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT, seed: int = 0) -> LemmaRecord:
    """Largest covering family found, checked against prod (d_i + 1) and the rank argument.

    Products with at most ``exhaustive_limit`` vertices are searched exactly;
    larger ones fall back to the seeded randomized search.
    """
    exhaustive = len(P.vertices) <= exhaustive_limit
    fam = max_covering_family(P) if exhaustive else random_covering_family(P, seed)
    rec = LemmaRecord(fam, len(fam), P.lemma_bound, P.degrees, exhaustive,
                      alon_polynomials_rank(fam, P), coefficient_rank(fam, P))
    assert rec.size <= rec.bound, f"covering family of size {rec.size} exceeds {rec.bound}"
    return rec


def sdf_set_to_family(A: CandidateSet) -> tuple[list[Vertex], ProductGraph]:
    """CRT coordinates of a valid A in Z_m, all primes 3 mod 4, with the Paley product they cover."""
    if not A.modulus.all_three_mod_four:
        raise WrongResidueClass(f"every prime of {A.modulus.m} must be 3 mod 4")
    chk = is_valid_set(A)
    if not chk:
        raise InvalidSet(f"pair {chk.pair} has a square difference")
    P = paley_product(A.modulus)
    S = sorted(A.modulus.coordinates(a) for a in A.elements)
    assert is_covering_family(S, P)
    return S, P


def random_product(rng: random.Random, max_vertices: int = 12) -> ProductGraph:
    """A product of 1-3 random digraphs with at most ``max_vertices`` vertices in total."""
    factors = []
    room = max_vertices
    for _ in range(rng.randint(1, 3)):
        if room < 2:
            break
        size = rng.randint(2, min(room, 6))
        factors.append(random_digraph(size, rng))
        room //= size
    return product(factors)
