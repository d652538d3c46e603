"""Square sets in Z_m, the conflict graph, validity checks and residue fibers.

A *square* in Z_m is any non-zero value ``y*y % m``, units or not (``6 = 6^2``
in Z_15 counts).  Pass ``units_only=True`` to restrict to squares of units.
A set A is *valid* when no difference of two distinct members is a square;
since both a-b and b-a lie in A-A, the conflict graph forbids d whenever d or
-d is a square.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Iterator

from .errors import TooLarge
from .modarith import Modulus, factor_squarefree, legendre
from .quadchar import CharProduct

VERTEX_CAP = 2_000_000
# Full bitset rows cost m^2/8 bytes, so only small graphs are materialized.
MATERIALIZE_CAP = 20_000


def as_modulus(m) -> Modulus:
    return m if isinstance(m, Modulus) else factor_squarefree(m)


def is_square(x: int, modulus: Modulus) -> bool:
    """Non-zero x is a square in Z_m iff it is a square (possibly 0) modulo every prime."""
    x %= modulus.m
    return x != 0 and all(legendre(x, p) >= 0 for p in modulus.primes)


@dataclass(frozen=True)
class ForbiddenSet:
    modulus: Modulus
    squares: frozenset[int]
    symmetric_closure: frozenset[int]
    units_only: bool = False

    def to_json(self) -> dict:
        return {"m": self.modulus.m, "squares": sorted(self.squares)}


@lru_cache(maxsize=256)
def _forbidden(modulus: Modulus, units_only: bool) -> ForbiddenSet:
    m = modulus.m
    ys = (y for y in range(m) if not units_only or gcd(y, m) == 1)
    sq = {y * y % m for y in ys}
    sq.discard(0)
    closure = sq | {m - x for x in sq}
    return ForbiddenSet(modulus, frozenset(sq), frozenset(closure), units_only)


def forbidden_set(m, units_only: bool = False) -> ForbiddenSet:
    return _forbidden(as_modulus(m), units_only)


@dataclass(frozen=True)
class ValidityCheck:
    valid: bool
    pair: tuple[int, int] | None = None

    def __bool__(self):
        return self.valid


@dataclass(frozen=True)
class CandidateSet:
    """A subset of Z_m.  Validity is computed once and cached."""

    modulus: Modulus
    elements: tuple[int, ...] = ()
    units_only: bool = False

    def __post_init__(self):
        m = self.modulus.m
        object.__setattr__(self, "elements", tuple(sorted({int(a) % m for a in self.elements})))

    @classmethod
    def of(cls, m, elements: Iterable[int] = (), units_only: bool = False) -> "CandidateSet":
        return cls(as_modulus(m), tuple(elements), units_only)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x % self.modulus.m in self.elements

    @cached_property
    def check(self) -> ValidityCheck:
        return is_valid_set(self)

    @property
    def status(self) -> str:
        """``"unknown"`` until validity has been computed, then ``"valid"``/``"invalid"``."""
        if "check" not in self.__dict__:
            return "unknown"
        return "valid" if self.check.valid else "invalid"

    @property
    def valid(self) -> bool:
        return self.check.valid

    def translate(self, t: int) -> "CandidateSet":
        return CandidateSet(self.modulus, tuple(a + t for a in self.elements), self.units_only)

    def scale(self, u: int) -> "CandidateSet":
        return CandidateSet(self.modulus, tuple(a * u for a in self.elements), self.units_only)

    def to_json(self, with_squares: bool = True) -> dict:
        out: dict = {"m": self.modulus.m}
        if with_squares:
            out["squares"] = sorted(forbidden_set(self.modulus, self.units_only).squares)
        out["set"] = list(self.elements)
        return out


def witness_to_json(A: CandidateSet, with_squares: bool = True) -> str:
    return json.dumps(A.to_json(with_squares))


def witness_from_json(text: str | dict) -> CandidateSet:
    rec = json.loads(text) if isinstance(text, str) else text
    A = CandidateSet.of(rec["m"], rec["set"])
    if "squares" in rec and set(rec["squares"]) != forbidden_set(A.modulus).squares:
        raise ValueError(f"square list does not match m={rec['m']}")
    return A


def is_valid_set(A: CandidateSet) -> ValidityCheck:
    """Check every ordered pair of distinct members; report the first offending pair."""
    sq = forbidden_set(A.modulus, A.units_only).squares
    m = A.modulus.m
    els = A.elements
    for i, a in enumerate(els):
        for b in els[:i]:
            if (a - b) % m in sq:
                return ValidityCheck(False, (a, b))
            if (b - a) % m in sq:
                return ValidityCheck(False, (b, a))
    return ValidityCheck(True)


class SdfGraph:
    """Circulant conflict graph on Z_m: a ~ b iff (a - b) mod m is in the symmetric closure.

    Rows are Python-int bitsets.  Up to ``materialize_cap`` vertices all rows are
    built eagerly; above it rows are rotated out of row 0 on request.
    """

    def __init__(self, m, *, vertex_cap: int = VERTEX_CAP, materialize_cap: int = MATERIALIZE_CAP,
                 units_only: bool = False):
        self.modulus = as_modulus(m)
        if self.modulus.m > vertex_cap:
            raise TooLarge(f"m={self.modulus.m} exceeds vertex cap {vertex_cap}")
        self.forbidden = forbidden_set(self.modulus, units_only)
        n = self.modulus.m
        self._full = (1 << n) - 1
        self.row0 = sum(1 << d for d in self.forbidden.symmetric_closure)
        self._rows = [self._rotate(i) for i in range(n)] if n <= materialize_cap else None

    @property
    def m(self) -> int:
        return self.modulus.m

    @property
    def connection_set(self) -> frozenset[int]:
        return self.forbidden.symmetric_closure

    @property
    def degree(self) -> int:
        return len(self.connection_set)

    def _rotate(self, i: int) -> int:
        n = self.modulus.m
        i %= n
        r = self.row0
        return ((r << i) | (r >> (n - i))) & self._full if i else r

    def row(self, i: int) -> int:
        if self._rows is not None:
            return self._rows[i % self.m]
        return self._rotate(i)

    def adjacent(self, a: int, b: int) -> bool:
        return (a - b) % self.m in self.connection_set

    def neighbors(self, v: int) -> list[int]:
        return sorted((v + d) % self.m for d in self.connection_set)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = 0
        for v in vertices:
            if (mask >> v) & 1 or self.row(v) & mask:
                return False
            mask |= 1 << v
        return True

    def complement_row(self, i: int) -> int:
        """Allowed neighbours of i: everything except i and its conflicts."""
        return self._full & ~self.row(i) & ~(1 << (i % self.m))


def build_graph(m, **kw) -> SdfGraph:
    return SdfGraph(m, **kw)


@dataclass(frozen=True)
class Fiber:
    residue: int
    elements: tuple[int, ...]
    reduced: CandidateSet


def residue_fibers(A: CandidateSet, cp: CharProduct) -> dict[int, Fiber]:
    """Split A by residue mod p_D; each fiber is also returned reduced into Z_{m / p_D}."""
    if cp.modulus != A.modulus:
        raise ValueError("character product and set live over different moduli")
    pD = cp.p_D
    rest = tuple(p for p in A.modulus.primes if p not in cp.primes)
    quotient = Modulus(A.modulus.m // pD, rest)
    buckets: dict[int, list[int]] = {x: [] for x in range(pD)}
    for a in A.elements:
        buckets[a % pD].append(a)
    return {
        x: Fiber(x, tuple(els), CandidateSet(quotient, tuple(els), A.units_only))
        for x, els in buckets.items()
    }
