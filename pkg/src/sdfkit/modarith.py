"""Exact modular arithmetic over odd squarefree moduli.

Everything here works with plain Python integers; residues are ints in
``[0, m)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod
from typing import Iterable, Sequence

import sympy as sp

from .errors import (
    DuplicatePrime,
    EvenModulus,
    ModulusTooLarge,
    NonCoprime,
    NotSquarefree,
    UnitModulus,
)

MAX_MODULUS = 2**63 - 1


@dataclass(frozen=True)
class Modulus:
    """An odd squarefree modulus together with its sorted prime factors.

    ``Modulus(1, ())`` is allowed internally (it shows up as the quotient
    ``m / p_D`` when D covers every prime) but :func:`factor_squarefree`
    refuses it at the public boundary.
    """

    m: int
    primes: tuple[int, ...]

    def __post_init__(self):
        if prod(self.primes) != self.m:
            raise ValueError(f"primes {self.primes} do not multiply to {self.m}")
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError("primes must be distinct and increasing")
        if any(p % 2 == 0 for p in self.primes):
            raise EvenModulus(f"{self.m} is even")

    @property
    def n(self) -> int:
        return len(self.primes)

    @cached_property
    def all_one_mod_four(self) -> bool:
        return self.n > 0 and all(p % 4 == 1 for p in self.primes)

    @cached_property
    def all_three_mod_four(self) -> bool:
        return self.n > 0 and all(p % 4 == 3 for p in self.primes)

    def index_of(self, p: int) -> int:
        """1-based index of the prime ``p`` in the factorization."""
        return self.primes.index(p) + 1

    def coordinates(self, x: int) -> tuple[int, ...]:
        return tuple(x % p for p in self.primes)

    def __int__(self):
        return self.m

    def __str__(self):
        return str(self.m)


def _sympy_factor(m: int) -> list[tuple[int, int]]:
    return sorted(sp.factorint(m).items())


def factor_squarefree(m: int, factorizer=None) -> Modulus:
    """Factor an odd squarefree ``m >= 3``.

    ``factorizer`` may be any callable returning ``[(prime, exponent), ...]``;
    the default is sympy's ``factorint``.
    """
    m = int(m)
    if m > MAX_MODULUS:
        raise ModulusTooLarge(f"{m} exceeds 2^63-1")
    if m == 1:
        raise UnitModulus("m = 1 has no odd prime divisor")
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m % 2 == 0:
        raise EvenModulus(f"{m} is even; drop the factor 2 first")
    factors = (factorizer or _sympy_factor)(m)
    for p, e in factors:
        if e > 1:
            raise NotSquarefree(f"{p}^2 divides {m}")
    return Modulus(m, tuple(sorted(p for p, _ in factors)))


def odd_part(m: int) -> int:
    """Strip every factor 2 from ``m`` (the reduction behind ``--drop-even-part``)."""
    while m > 0 and m % 2 == 0:
        m //= 2
    return m


def is_odd_squarefree(m: int) -> bool:
    if m < 3 or m % 2 == 0:
        return False
    return all(e == 1 for _, e in _sympy_factor(m))


def odd_squarefree_range(lo: int, hi: int) -> list[int]:
    """All odd squarefree m with ``lo <= m <= hi`` and ``m >= 3``."""
    return [m for m in range(max(lo, 3), hi + 1) if is_odd_squarefree(m)]


def is_prime(n: int) -> bool:
    return bool(sp.isprime(n))


def odd_primes(limit: int) -> list[int]:
    """Odd primes ``<= limit``."""
    return [int(p) for p in sp.primerange(3, limit + 1)]


def crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Combine ``x = r_i (mod m_i)`` for pairwise coprime ``m_i``."""
    x, M = 0, 1
    for r, mi in zip(residues, moduli):
        if gcd(M, mi) != 1:
            raise NonCoprime(f"{mi} is not coprime to {M}")
        # x + M*t = r (mod mi)
        t = ((r - x) * pow(M, -1, mi)) % mi
        x += M * t
        M *= mi
    return x % M


def crt_combine(components: Iterable[tuple[int, int]]) -> int:
    """Combine ``(residue, prime)`` pairs into the unique residue mod their product."""
    components = list(components)
    primes = [p for _, p in components]
    if len(set(primes)) != len(primes):
        raise DuplicatePrime(f"repeated prime in {primes}")
    return crt([r % p for r, p in components], primes)


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion; 0 when ``p | a``."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def jacobi(a: int, m: Modulus) -> int:
    """Jacobi symbol ``(a | m)`` as the product of Legendre symbols."""
    s = 1
    for p in m.primes:
        s *= legendre(a, p)
        if s == 0:
            return 0
    return s


def least_nonresidue(p: int) -> int:
    """Smallest positive quadratic nonresidue modulo the odd prime ``p``."""
    for x in range(2, p):
        if legendre(x, p) == -1:
            return x
    raise ValueError(f"no nonresidue modulo {p}")


def character_table(p: int) -> list[int]:
    """``[legendre(x, p) for x in range(p)]``."""
    return [legendre(x, p) for x in range(p)]
