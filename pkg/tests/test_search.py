import itertools
import random

import numpy as np
import pytest

from sdfkit.core import CandidateSet, forbidden_set
from sdfkit.errors import TooLarge
from sdfkit.modarith import factor_squarefree, odd_primes, odd_squarefree_range
from sdfkit.search import (
    allowed_orbits, brute_force_oracle, canonical_form, greedy_lower, max_clique_exact, max_sdf_exact,
    multiplier_group,
)

SMALL = [m for m in odd_squarefree_range(3, 40)]


def test_oracle_examples():
    assert brute_force_oracle(3).size == 1
    r5 = brute_force_oracle(5)
    assert r5.size == 2 and r5.best_set.elements == (0, 2)
    assert brute_force_oracle(15).size == 2
    with pytest.raises(TooLarge):
        brute_force_oracle(41)


def test_exact_examples():
    r13 = max_sdf_exact(13)
    assert r13.size == 3 and r13.exact and r13.best_set.elements == (0, 2, 7)
    r21 = max_sdf_exact(21)
    assert r21.size == 3 and r21.best_set.elements == (0, 2, 10)
    assert max_sdf_exact(5).best_set.elements == (0, 2)


@pytest.mark.parametrize("m", SMALL)
def test_exact_equals_oracle_with_same_witness(m):
    o = brute_force_oracle(m)
    r = max_sdf_exact(m)
    assert r.exact and r.lex_smallest
    assert (r.size, r.best_set.elements) == (o.size, o.best_set.elements)


@pytest.mark.parametrize("m", [15, 21, 33, 35, 39])
def test_units_only_agrees_with_oracle(m):
    o = brute_force_oracle(m, units_only=True)
    r = max_sdf_exact(m, units_only=True)
    assert r.size == o.size and r.best_set.elements == o.best_set.elements
    assert r.best_set.units_only


def test_known_values():
    for m, F in [(105, 6), (385, 12), (613, 12), (997, 13)]:
        r = max_sdf_exact(m)
        assert r.exact and r.size == F and r.best_set.valid


def test_paley_product_beats_factor_product():
    # 65 = 5 * 13 gives more than F(5) F(13) = 6
    r = max_sdf_exact(65)
    assert r.exact and r.size == 7


def test_budget_exhaustion_is_flagged():
    r = max_sdf_exact(689, budget_nodes=2000)
    assert not r.exact and not r.lex_smallest
    assert r.best_set.valid and r.size >= len(greedy_lower(689))
    assert r.to_record()["exact"] is False


def test_reproducible():
    a = max_sdf_exact(445)
    b = max_sdf_exact(445)
    assert a.to_record() == b.to_record() and a.nodes_explored == b.nodes_explored


def test_greedy():
    assert greedy_lower(5).elements == (0, 2)
    assert greedy_lower(3).elements == (0,)
    for m in odd_squarefree_range(3, 300):
        for order in ("natural", "random"):
            A = greedy_lower(m, order, seed=m)
            assert A.valid
    assert greedy_lower(13, [7, 2, 0]).elements == (0, 2, 7)


def test_sandwich_small():
    for m in SMALL:
        assert len(greedy_lower(m)) <= max_sdf_exact(m).size


def test_primes_three_mod_four():
    for p in odd_primes(200):
        if p % 4 == 3:
            r = max_sdf_exact(p)
            assert r.exact and r.size == 1


def test_multipliers_are_automorphisms():
    for m in (15, 65, 105, 231):
        M = factor_squarefree(m)
        closure = forbidden_set(M).symmetric_closure
        for u in multiplier_group(M):
            assert {d * u % m for d in closure} == closure


def test_orbits_partition_allowed_differences():
    M = factor_squarefree(105)
    closure = forbidden_set(M).symmetric_closure
    orbits = allowed_orbits(M)
    covered = sorted(x for _, orb in orbits for x in orb)
    assert covered == [x for x in range(1, 105) if x not in closure]
    assert all(r == min(orb) for r, orb in orbits)


def test_canonical_form():
    M = factor_squarefree(13)
    A = CandidateSet(M, (3, 5, 10))
    c = canonical_form(A)
    assert c.valid and c.elements[0] == 0 and c.elements <= (0, 2, 7)


def _brute_clique(M):
    k = M.shape[0]
    for size in range(k, 0, -1):
        for combo in itertools.combinations(range(k), size):
            if all(M[a, b] for a, b in itertools.combinations(combo, 2)):
                return list(combo)
    return []


def test_max_clique_exact_random_graphs():
    rng = np.random.default_rng(0)
    for _ in range(40):
        k = int(rng.integers(1, 14))
        U = rng.random((k, k)) < 0.5
        M = np.triu(U, 1)
        M = M | M.T
        assert max_clique_exact(M) == _brute_clique(M)


def test_max_clique_exact_wide():
    # more than 64 vertices exercises multi-word bitsets
    k = 150
    M = np.zeros((k, k), dtype=bool)
    clique = [3, 70, 71, 129, 149]
    for a in clique:
        for b in clique:
            if a != b:
                M[a, b] = True
    rng = random.Random(1)
    for _ in range(300):
        a, b = rng.sample(range(k), 2)
        if len({a, b} & set(clique)) < 2:
            M[a, b] = M[b, a] = True
    got = max_clique_exact(M)
    assert len(got) >= 5
    assert all(M[a, b] for a, b in itertools.combinations(got, 2))
