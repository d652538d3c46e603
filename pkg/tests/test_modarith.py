import random
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from sdfkit.errors import DuplicatePrime, EvenModulus, ModulusTooLarge, NonCoprime, NotSquarefree, UnitModulus
from sdfkit.modarith import (
    Modulus, character_table, crt, crt_combine, factor_squarefree, is_odd_squarefree, is_prime, jacobi,
    least_nonresidue, legendre, odd_part, odd_primes, odd_squarefree_range,
)


def test_factor_small():
    assert factor_squarefree(105) == Modulus(105, (3, 5, 7))
    assert factor_squarefree(997).primes == (997,)
    assert factor_squarefree(15).index_of(5) == 2
    big = factor_squarefree(3 * 1000003 * 1000033)
    assert big.primes == (3, 1000003, 1000033) and big.n == 3


@pytest.mark.parametrize("m, err", [(2, EvenModulus), (30, EvenModulus), (1, UnitModulus),
                                    (9, NotSquarefree), (75, NotSquarefree), (2**63, ModulusTooLarge)])
def test_factor_rejects(m, err):
    with pytest.raises(err):
        factor_squarefree(m)


def test_factor_external_factorizer():
    # an injected factorizer must still produce a checked squarefree factorization
    got = factor_squarefree(3 * 5 * 7, factorizer=lambda m: [(3, 1), (5, 1), (7, 1)])
    assert got.primes == (3, 5, 7)
    with pytest.raises(NotSquarefree):
        factor_squarefree(45, factorizer=lambda m: [(3, 2), (5, 1)])


def test_odd_part_and_range():
    assert odd_part(60) == 15
    assert odd_squarefree_range(3, 21) == [3, 5, 7, 11, 13, 15, 17, 19, 21]
    assert not is_odd_squarefree(45)


def test_primes_sieve():
    assert odd_primes(30) == [3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert all(is_prime(p) for p in odd_primes(2000))
    assert sum(is_prime(n) for n in range(3, 2000, 2)) == len(odd_primes(2000))


def test_mod4_flags():
    assert factor_squarefree(65).all_one_mod_four
    assert factor_squarefree(77).all_three_mod_four
    assert not factor_squarefree(15).all_one_mod_four
    assert not factor_squarefree(15).all_three_mod_four


def test_crt_bijection_exhaustive():
    # every x in Z_m is hit exactly once from its coordinates, all odd squarefree m <= 1500
    for m in odd_squarefree_range(3, 1500):
        M = factor_squarefree(m)
        if M.n == 1:
            continue
        for x in range(m):
            assert crt(M.coordinates(x), M.primes) == x


@settings(max_examples=300, deadline=None)
@given(st.integers(3, 10**4))
def test_crt_roundtrip_random(m):
    if not is_odd_squarefree(m):
        return
    M = factor_squarefree(m)
    rng = random.Random(m)
    for _ in range(20):
        x = rng.randrange(m)
        assert crt(M.coordinates(x), M.primes) == x
        assert crt_combine(zip(M.coordinates(x), M.primes)) == x


def test_crt_errors():
    with pytest.raises(NonCoprime):
        crt([1, 2], [3, 15])
    with pytest.raises(DuplicatePrime):
        crt_combine([(1, 3), (2, 3)])


def test_legendre_matches_squares():
    for p in odd_primes(200):
        squares = {x * x % p for x in range(1, p)}
        for a in range(p):
            want = 0 if a == 0 else (1 if a in squares else -1)
            assert legendre(a, p) == want
        assert character_table(p)[1:] == [legendre(a, p) for a in range(1, p)]


def test_jacobi_is_product_of_legendre():
    for m in (15, 105, 1155, 4199):
        M = factor_squarefree(m)
        for a in range(0, m, 7):
            assert jacobi(a, M) == prod(legendre(a, p) for p in M.primes)


def test_least_nonresidue():
    assert least_nonresidue(5) == 2
    assert least_nonresidue(7) == 3
    assert least_nonresidue(73) == 5
    for p in odd_primes(500):
        r = least_nonresidue(p)
        assert legendre(r, p) == -1 and all(legendre(a, p) == 1 for a in range(1, r))
