import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from sdfkit.core import (
    CandidateSet, SdfGraph, build_graph, forbidden_set, is_square, is_valid_set, residue_fibers,
    witness_from_json, witness_to_json,
)
from sdfkit.errors import TooLarge
from sdfkit.modarith import factor_squarefree, legendre, odd_primes, odd_squarefree_range
from sdfkit.quadchar import CharProduct


def test_squares_examples():
    assert forbidden_set(15).squares == {1, 4, 6, 9, 10}
    assert forbidden_set(3).squares == {1}
    f5 = forbidden_set(5)
    assert f5.squares == {1, 4} and f5.symmetric_closure == {1, 4}
    assert forbidden_set(3).symmetric_closure == {1, 2}


def test_units_only_switch():
    # 6 = 6^2 and 10 = 5^2 are squares of non-units in Z_15
    assert forbidden_set(15, units_only=True).squares == {1, 4}
    assert CandidateSet.of(15, [0, 6], units_only=True).valid
    assert not CandidateSet.of(15, [0, 6]).valid


def test_is_square_matches_enumeration():
    for m in odd_squarefree_range(3, 1000):
        M = factor_squarefree(m)
        sq = forbidden_set(M).squares
        for x in range(m):
            assert is_square(x, M) == (x in sq)


def test_graph_shapes():
    g5 = build_graph(5)
    assert all(g5.degree == 2 and len(g5.neighbors(v)) == 2 for v in range(5))
    assert g5.neighbors(0) == [1, 4]
    g13 = build_graph(13)
    assert g13.degree == 6
    assert all(g13.adjacent(a, b) == g13.adjacent(b, a) for a in range(13) for b in range(13))
    g3 = build_graph(3)
    assert g3.is_independent([1]) and not g3.is_independent([0, 1]) and not g3.is_independent([0, 2])


def test_graph_rows_agree_when_not_materialized():
    full = SdfGraph(105)
    lazy = SdfGraph(105, materialize_cap=10)
    assert all(full.row(i) == lazy.row(i) for i in range(105))
    assert full.complement_row(0) & 1 == 0


def test_graph_vertex_cap():
    with pytest.raises(TooLarge):
        SdfGraph(1155, vertex_cap=1000)


def test_validity_examples():
    assert is_valid_set(CandidateSet.of(15, [0, 2]))
    chk = is_valid_set(CandidateSet.of(15, [0, 1]))
    assert not chk and chk.pair == (1, 0)
    assert is_valid_set(CandidateSet.of(15, []))
    assert is_valid_set(CandidateSet.of(15, [7]))


def test_candidate_set_normalizes():
    A = CandidateSet.of(15, [17, 2, 0, 15])
    assert A.elements == (0, 2)
    assert A.status == "unknown"
    assert A.valid and A.status == "valid"
    B = CandidateSet.of(15, [0, 1])
    assert not B.valid and B.status == "invalid"
    assert len(A) == 2 and 2 in A and 17 in A


def test_witness_json_roundtrip():
    A = CandidateSet.of(15, [0, 2])
    text = witness_to_json(A)
    assert json.loads(text) == {"m": 15, "squares": [1, 4, 6, 9, 10], "set": [0, 2]}
    assert witness_from_json(text) == A
    assert witness_from_json({"m": 15, "set": [0, 2]}) == A


def test_paley_independent_sets_for_primes_one_mod_four():
    # -1 is a square, so the closure is just the squares: the Paley graph
    for p in (5, 13, 17, 29):
        f = forbidden_set(p)
        assert f.symmetric_closure == f.squares
        assert f.squares == {x for x in range(1, p) if legendre(x, p) == 1}


def test_primes_three_mod_four_complete_graph():
    for p in odd_primes(200):
        if p % 4 == 3:
            assert forbidden_set(p).symmetric_closure == set(range(1, p))


def _maximal_valid_sets(m):
    """Every maximal valid set containing 0.

    Translates and subsets of these give every valid set, and both operations
    map fibers into (translated) sub-fibers, so checking these is exhaustive.
    """
    closure = forbidden_set(m).symmetric_closure
    out = []

    def ok(cur, x):
        return all((x - a) % m not in closure for a in cur)

    def grow(cur, start):
        ext = False
        for x in range(1, m):
            if x not in cur and ok(cur, x):
                ext = True
                if x >= start:
                    cur.append(x)
                    grow(cur, x + 1)
                    cur.pop()
        if not ext:
            out.append(tuple(cur))
    grow([0], 1)
    return out


@pytest.mark.parametrize("m", [15, 21, 33, 35, 105])
def test_fiber_reduction_preserves_validity(m):
    M = factor_squarefree(m)
    sets = _maximal_valid_sets(m)
    assert sets
    for size in range(1, M.n + 1):
        for D in itertools.combinations(range(1, M.n + 1), size):
            cp = CharProduct(M, D)
            for els in sets:
                A = CandidateSet(M, els)
                for f in residue_fibers(A, cp).values():
                    assert f.reduced.valid
                    assert len(f.reduced) == len(f.elements)


def test_fiber_examples():
    M = factor_squarefree(15)
    cp = CharProduct(M, (1,))
    fib = residue_fibers(CandidateSet(M, (0, 2)), cp)
    assert {x: f.elements for x, f in fib.items()} == {0: (0,), 1: (), 2: (2,)}
    fib = residue_fibers(CandidateSet(M, (0, 3, 6)), cp)
    assert fib[0].elements == (0, 3, 6) and not fib[1].elements and not fib[2].elements
    full = residue_fibers(CandidateSet(M, (0, 2, 7)), CharProduct(M, (1, 2)))
    assert all(len(f.elements) <= 1 for f in full.values())


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(odd_squarefree_range(3, 400)), st.data())
def test_translate_and_negate_preserve_validity(m, data):
    M = factor_squarefree(m)
    els = data.draw(st.lists(st.integers(0, m - 1), max_size=6))
    A = CandidateSet(M, tuple(els))
    t = data.draw(st.integers(0, m - 1))
    assert A.valid == A.translate(t).valid == A.scale(-1).valid


def test_unit_square_scaling_preserves_validity():
    rng = random.Random(3)
    M = factor_squarefree(105)
    A = CandidateSet(M, (0, 2, 10, 12, 29, 52))
    assert A.valid
    for _ in range(20):
        y = rng.choice([y for y in range(1, 105) if y % 3 and y % 5 and y % 7])
        assert A.scale(y * y).valid
