import pytest

from sdfkit.construct import (
    CollisionCertificate, pigeonhole_witness, product_construct, ramsey_construct, ramsey_guarantee,
    ramsey_trace, scale_by_nonresidue,
)
from sdfkit.core import CandidateSet
from sdfkit.errors import InvalidPart, NoCollision, NonCoprime, WrongResidueClass
from sdfkit.modarith import odd_primes, odd_squarefree_range
from sdfkit.search import max_sdf_exact


def test_product_examples():
    A = product_construct([(5, [0, 2]), (13, [0, 2, 7])])
    assert A.modulus.m == 65 and len(A) == 6 and A.valid
    B = product_construct([(3, [0]), (5, [0, 2])])
    assert B.modulus.m == 15 and len(B) == 2 and B.valid
    C = product_construct([(13, [0, 2, 7])])
    assert C.elements == (0, 2, 7)


def test_product_errors():
    with pytest.raises(InvalidPart):
        product_construct([(5, [0, 1]), (3, [0])])
    with pytest.raises(NonCoprime):
        product_construct([(15, [0, 2]), (5, [0, 2])])


def test_product_of_small_moduli_always_valid():
    mods = odd_squarefree_range(3, 50)
    wit = {m: max_sdf_exact(m).best_set for m in mods}
    for i, a in enumerate(mods):
        for b in mods[i + 1:]:
            if a * b > 2500 or any(a % p == 0 for p in wit[b].modulus.primes):
                continue
            A = product_construct([(a, wit[a]), (b, wit[b])])
            assert A.valid and len(A) == len(wit[a]) * len(wit[b])


def test_scale_by_nonresidue():
    assert scale_by_nonresidue([0, 1], 5, 2).elements == (0, 2)
    assert scale_by_nonresidue([0, 1], 5, 2).valid
    assert scale_by_nonresidue([0], 5).elements == (0,)
    A = CandidateSet.of(13, [0, 2, 7])
    twice = scale_by_nonresidue(scale_by_nonresidue(A, 13), 13)
    assert twice.valid == A.valid
    with pytest.raises(ValueError):
        scale_by_nonresidue([0, 1], 5, 4)


def test_ramsey_examples():
    assert ramsey_guarantee(13) == 1 and ramsey_guarantee(101) == 3 and ramsey_guarantee(5) == 1
    for p in (5, 13, 101):
        A = ramsey_construct(p)
        assert A.valid and len(A) >= ramsey_guarantee(p)
    with pytest.raises(WrongResidueClass):
        ramsey_construct(7)


def test_ramsey_trace_is_monochromatic():
    for p in (13, 29, 101, 409):
        t = ramsey_trace(p)
        assert all(c == t.colour for v, c in zip(t.pivots, t.colours) if v in t.clique)
        A = CandidateSet.of(p, t.clique)
        # the raw clique is valid only for the nonsquare colour
        assert A.valid == (t.colour == -1)
        assert t.result.valid


def test_pigeonhole_example():
    cert = pigeonhole_witness([0, 1, 2], 5, 2)
    assert cert.verify()
    by_hand = CollisionCertificate(5, 2, (0, 1), (2, 0), 2, (1, 0), (0, 2))
    assert by_hand.verify()
    cert13 = pigeonhole_witness([0, 3, 5, 11], 13, 2)
    assert cert13.verify() and cert13.xi == 2


def test_pigeonhole_errors():
    with pytest.raises(NoCollision):
        pigeonhole_witness([0, 1], 5)
    with pytest.raises(WrongResidueClass):
        pigeonhole_witness([0, 1, 2], 7)
    with pytest.raises(ValueError):
        pigeonhole_witness([0, 1, 2], 5, 4)


def test_pigeonhole_identity_many():
    for p in odd_primes(300):
        if p % 4 != 1:
            continue
        k = int(p**0.5) + 1
        A = list(range(0, 3 * k, 3))
        cert = pigeonhole_witness(A, p)
        (a1, b1), (a2, b2) = cert.pair1, cert.pair2
        assert cert.xi % p == (a1 - a2) * pow(b2 - b1, -1, p) % p
        assert cert.verify()


def test_tampered_certificate_fails():
    cert = pigeonhole_witness([0, 1, 2], 5, 2)
    bad = CollisionCertificate(cert.p, cert.xi, cert.pair1, cert.pair1, cert.value,
                               cert.residue_difference, cert.nonresidue_difference)
    assert not bad.verify()
