"""Quadratic characters modulo the prime factors of m and the exact sums built from them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import prod
from typing import Iterable

import numpy as np

from .modarith import Modulus, legendre


@lru_cache(maxsize=4096)
def _table(p: int) -> np.ndarray:
    return np.array([legendre(x, p) for x in range(p)], dtype=np.int64)


@dataclass(frozen=True)
class CharProduct:
    """The product character chi_D = prod_{j in D} chi_j.

    ``D`` holds 1-based indices into ``modulus.primes``.
    """

    modulus: Modulus
    D: tuple[int, ...]

    def __post_init__(self):
        D = tuple(sorted(set(self.D)))
        if any(not 1 <= j <= self.modulus.n for j in D):
            raise ValueError(f"indices {self.D} out of range 1..{self.modulus.n}")
        object.__setattr__(self, "D", D)

    @classmethod
    def of_primes(cls, modulus: Modulus, primes: Iterable[int]) -> "CharProduct":
        return cls(modulus, tuple(modulus.index_of(p) for p in primes))

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return tuple(self.modulus.primes[j - 1] for j in self.D)

    @property
    def p_D(self) -> int:
        return prod(self.primes)

    @property
    def d(self) -> int:
        return len(self.D)

    def __call__(self, x: int) -> int:
        return chi_D(x, self)


def chi_D(x: int, cp: CharProduct) -> int:
    s = 1
    for p in cp.primes:
        s *= legendre(x, p)
        if s == 0:
            break
    return s


def is_special_pair(b1: int, b2: int, p: int) -> bool:
    return (b1 - b2) % p == 0


def inner_pair_sum(b1: int, b2: int, p: int) -> int:
    """sum_{a mod p} chi(a - b1) chi(a - b2), evaluated term by term.

    Equals ``p - 1`` on special pairs and ``-1`` otherwise.
    """
    t = _table(p)
    a = np.arange(p, dtype=np.int64)
    return int((t[(a - b1) % p] * t[(a - b2) % p]).sum())


def full_residue_pair_sum(b1: int, b2: int, cp: CharProduct) -> int:
    """sum_{a mod p_D} prod_{j in D} chi_j(a - b1) chi_j(a - b2), summed directly over Z_{p_D}."""
    if not cp.D:
        raise ValueError("D must be non-empty")
    a = np.arange(cp.p_D, dtype=np.int64)
    term = np.ones(cp.p_D, dtype=np.int64)
    for p in cp.primes:
        t = _table(p)
        term *= t[(a - b1) % p] * t[(a - b2) % p]
    return int(term.sum())


def factored_pair_sum(b1: int, b2: int, cp: CharProduct) -> int:
    """Same quantity through the CRT factorization: the product of per-prime sums."""
    return prod(inner_pair_sum(b1, b2, p) for p in cp.primes)


def chi_D_vector(cp: CharProduct) -> np.ndarray:
    """chi_D(x) for every x in Z_m, as an int array of length m."""
    m = cp.modulus.m
    x = np.arange(m, dtype=np.int64)
    out = np.ones(m, dtype=np.int64)
    for p in cp.primes:
        out *= _table(p)[x % p]
    return out


def s_D(A: Iterable[int], cp: CharProduct) -> int:
    """S_D = sum_{a in A} |sum_{b in A} chi_D(a - b)|^2 in exact integer arithmetic."""
    elems = sorted({int(a) % cp.modulus.m for a in A})
    if not elems:
        return 0
    total = 0
    for a in elems:
        inner = sum(chi_D(a - b, cp) for b in elems)
        total += inner * inner
    return total
