"""Explicit valid sets: CRT products, the Ramsey pivot construction, and the
pigeonhole collision that caps valid sets in Z_p at sqrt(p)."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from math import gcd, log2, prod
from typing import Iterable, Sequence

from .core import CandidateSet, as_modulus, is_valid_set
from .errors import InvalidPart, NoCollision, NonCoprime, WrongResidueClass
from .modarith import Modulus, character_table, crt, is_prime, legendre, least_nonresidue


def product_construct(parts: Sequence[tuple[Modulus | int, Iterable[int]]]) -> CandidateSet:
    """CRT image of A_1 x ... x A_k for valid A_i in pairwise coprime Z_{m_i}."""
    mods: list[Modulus] = []
    sets: list[CandidateSet] = []
    for m, A in parts:
        A = A if isinstance(A, CandidateSet) else CandidateSet.of(m, A)
        chk = is_valid_set(A)
        if not chk:
            raise InvalidPart(f"part mod {A.modulus.m} is not valid: {chk.pair}")
        mods.append(A.modulus)
        sets.append(A)
    for i, a in enumerate(mods):
        for b in mods[i + 1:]:
            if gcd(a.m, b.m) != 1:
                raise NonCoprime(f"{a.m} and {b.m} share a factor")
    primes = tuple(sorted(p for md in mods for p in md.primes))
    total = Modulus(prod(md.m for md in mods), primes)
    moduli = [md.m for md in mods]
    elems = tuple(crt(combo, moduli) for combo in cartesian(*(s.elements for s in sets)))
    return CandidateSet(total, elems)


def scale_by_nonresidue(A: CandidateSet | Iterable[int], p: int, xi: int | None = None) -> CandidateSet:
    """Multiply every element by a nonresidue (the least one unless ``xi`` is given).

    Over Z_p with p = 1 (mod 4) this swaps sets whose differences are all squares
    with valid sets.
    """
    if not isinstance(A, CandidateSet):
        A = CandidateSet.of(p, A)
    xi = least_nonresidue(p) if xi is None else xi
    if legendre(xi, p) != -1:
        raise ValueError(f"{xi} is not a nonresidue mod {p}")
    return A.scale(xi)


@dataclass(frozen=True)
class RamseyTrace:
    pivots: tuple[int, ...]
    colours: tuple[int, ...]  # +1: pivot kept the square side, -1: nonsquare side
    colour: int
    clique: tuple[int, ...]
    result: CandidateSet


def ramsey_guarantee(p: int) -> int:
    """Size the pivot construction always reaches: max(1, floor(log2(p) / 2))."""
    return max(1, int(log2(p) // 2))


def ramsey_trace(p: int) -> RamseyTrace:
    if not is_prime(p) or p % 4 != 1:
        raise WrongResidueClass(f"need a prime p = 1 (mod 4), got {p}")
    chi = character_table(p)
    remaining = list(range(p))
    pivots: list[int] = []
    colours: list[int] = []
    while remaining:
        v = remaining[0]  # smallest index: deterministic pivot
        rest = remaining[1:]
        sq = [x for x in rest if chi[x - v] == 1]
        ns = [x for x in rest if chi[x - v] == -1]
        pivots.append(v)
        if len(ns) >= len(sq):
            colours.append(-1)
            remaining = ns
        else:
            colours.append(1)
            remaining = sq
    # Every later pivot sits in the side chosen at each earlier pivot.  The last
    # pivot has no later vertices, so it joins whichever colour wins.
    head = colours[:-1]
    n_sq = head.count(1)
    colour = 1 if n_sq > len(head) - n_sq else -1
    colours[-1] = colour
    clique = tuple(v for v, c in zip(pivots, colours) if c == colour)
    A = CandidateSet.of(p, clique)
    if colour == 1:
        A = scale_by_nonresidue(A, p)
    return RamseyTrace(tuple(pivots), tuple(colours), colour, clique, A)


def ramsey_construct(p: int) -> CandidateSet:
    """Monochromatic clique of the quadratic-character colouring of K_p, made valid.

    A nonsquare clique is valid as is; a square clique is scaled by a nonresidue.
    """
    trace = ramsey_trace(p)
    A = trace.result
    assert A.valid and len(A) >= ramsey_guarantee(p)
    return A


@dataclass(frozen=True)
class CollisionCertificate:
    p: int
    xi: int
    pair1: tuple[int, int]
    pair2: tuple[int, int]
    value: int
    residue_difference: tuple[int, int]
    nonresidue_difference: tuple[int, int]

    def verify(self) -> bool:
        p, xi = self.p, self.xi
        (a1, b1), (a2, b2) = self.pair1, self.pair2
        if self.pair1 == self.pair2:
            return False
        if (a1 + xi * b1) % p != self.value or (a2 + xi * b2) % p != self.value:
            return False
        if (b2 - b1) % p == 0 or xi % p != (a1 - a2) * pow(b2 - b1, -1, p) % p:
            return False
        x, y = self.residue_difference
        u, v = self.nonresidue_difference
        return legendre(x - y, p) == 1 and legendre(u - v, p) == -1


def pigeonhole_witness(A: CandidateSet | Iterable[int], p: int, xi: int | None = None) -> CollisionCertificate:
    """Two distinct pairs with a1 + xi*b1 = a2 + xi*b2 in Z_p.

    Then xi = (a1 - a2)/(b2 - b1), so the two differences have opposite
    quadratic character: one is a nonresidue and the other a non-zero square,
    which exhibits a square in A - A.
    """
    if not is_prime(p) or p % 4 != 1:
        raise WrongResidueClass(f"need a prime p = 1 (mod 4), got {p}")
    els = sorted({a % p for a in A})
    if len(els) ** 2 <= p:
        raise NoCollision(f"|A|^2 = {len(els) ** 2} <= {p}: a collision is not forced")
    xi = least_nonresidue(p) if xi is None else xi % p
    if legendre(xi, p) != -1:
        raise ValueError(f"{xi} is not a nonresidue mod {p}")
    seen: dict[int, tuple[int, int]] = {}
    for a in els:
        for b in els:
            val = (a + xi * b) % p
            if val in seen:
                a1, b1 = seen[val]
                a2, b2 = a, b
                if legendre(a1 - a2, p) == 1:
                    res, non = (a1, a2), (b1, b2)
                else:
                    res, non = (b1, b2), (a1, a2)
                cert = CollisionCertificate(p, xi, (a1, b1), (a2, b2), val, res, non)
                assert cert.verify()
                return cert
            seen[val] = (a, b)
    raise NoCollision("no collision found")  # unreachable when |A|^2 > p
