import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringlat import rings as rg
from ringlat.errors import InternalCheckError, PreconditionError, SizeLimitError


def test_zmod_basics(z12):
    assert z12.order == 12
    assert z12.zero == 0 and z12.one == 1
    assert z12.plus(7, 8) == 3
    assert z12.times(7, 8) == 8
    assert z12.minus(3, 7) == 8
    assert z12.power(5, 3) == 5
    assert sorted(np.flatnonzero(z12.units)) == [1, 5, 7, 11]
    assert sorted(np.flatnonzero(z12.nilpotents)) == [0, 6]


@given(st.integers(min_value=2, max_value=40))
@settings(max_examples=25, deadline=None)
def test_zmod_axioms(n):
    rg.check_ring_axioms(rg.make_zmod(n))


def test_zmod_rejects_trivial_orders():
    with pytest.raises(PreconditionError):
        rg.make_zmod(1)
    with pytest.raises(PreconditionError):
        rg.make_zmod(0)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_gf_is_a_field(p, k):
    ring = rg.make_gf(p, k)
    assert ring.order == p ** k
    rg.check_ring_axioms(ring)
    assert rg.is_field(ring)


def test_gf_rejects_composite_characteristic():
    with pytest.raises(PreconditionError):
        rg.make_gf(6)


def test_corrupted_table_fails_axioms(z4):
    add = np.array(z4.add, copy=True)
    add[2, 3] = 0  # breaks commutativity against add[3, 2]
    broken = rg.FiniteRing(4, add, np.array(z4.mul, copy=True), 0, 1, "broken")
    with pytest.raises(InternalCheckError):
        rg.check_ring_axioms(broken)


def test_product_projections_and_diagonal(z4, f3):
    pr = rg.product([z4, f3])
    assert pr.ring.order == 12
    rg.check_ring_axioms(pr.ring)
    for i in range(pr.ring.order):
        a, b = int(pr.projections[0].map[i]), int(pr.projections[1].map[i])
        assert i == a * 3 + b
    assert pr.diagonal is None
    same = rg.product([z4, z4])
    assert same.diagonal is not None
    assert same.diagonal.is_injective


def test_quotient_of_zmod(z12):
    from ringlat.ideals import ideal_generated

    qr = rg.quotient(z12, ideal_generated(z12, [4]))
    assert qr.ring.order == 4
    assert rg.is_isomorphic(qr.ring, rg.make_zmod(4)) is not None
    assert not qr.projection.is_injective


def test_poly_quotient_builds_gf4(f2):
    pq = rg.poly_quotient(f2, [1, 1, 1], var="x")  # x^2 + x + 1
    assert pq.ring.order == 4
    assert rg.is_field(pq.ring)
    assert rg.is_isomorphic(pq.ring, rg.make_gf(2, 2)) is not None
    assert pq.to_quotient.is_injective


def test_poly_quotient_with_relations(f2):
    base = rg.poly_quotient(f2, [0, 0, 1], var="t").ring
    t = 2 if base.mul[2, 2] == base.zero and 2 != base.zero else 3
    pq = rg.poly_quotient(base, [int(base.neg[t]), 0, 1], relations=[[0, t]], var="x")
    assert pq.ring.order == 8
    rg.check_ring_axioms(pq.ring)


def test_poly_quotient_requires_monic(f2):
    with pytest.raises(PreconditionError):
        rg.poly_quotient(f2, [1])  # constant
    with pytest.raises(PreconditionError):
        rg.poly_quotient(f2, [1, 0, 0])  # leading zero


def test_idempotents_and_connectivity(z4, f4):
    z6 = rg.make_zmod(6)
    assert sorted(e.index for e in rg.idempotents(z6)) == [0, 1, 3, 4]
    assert not rg.is_connected(z6)
    assert rg.is_connected(z4)
    assert rg.is_connected(f4)


def test_local_and_spir(z8, z12):
    m = rg.is_local(z8)
    assert m is not None and sorted(m.elements) == [0, 2, 4, 6]
    assert rg.is_local(z12) is None
    wit = rg.is_spir(z8)
    assert wit is not None and wit.index == 3 and wit.generator.index == 2
    assert rg.is_spir(z12) is None
    assert rg.is_spir(rg.make_gf(5)) is None  # fields excluded
    assert rg.nilpotency_index(z8) == 3


def test_local_decomposition(z12):
    dec = rg.local_decomposition(z12)
    orders = sorted(f.order for f, _ in dec.factors)
    assert orders == [3, 4]
    assert dec.iso.is_injective


def test_is_isomorphic_distinguishes(z4, f4):
    assert rg.is_isomorphic(z4, f4) is None
    perm = rg.is_isomorphic(z4, rg.make_zmod(4))
    assert perm is not None


def test_size_limits():
    with pytest.raises(SizeLimitError):
        rg.make_zmod(5000)
    assert rg.make_zmod(5000, max_order=5000).order == 5000


def test_env_override(monkeypatch):
    monkeypatch.setenv("RINGLAT_MAX_ORDER", "6000")
    assert rg.make_zmod(5000).order == 5000
    monkeypatch.delenv("RINGLAT_MAX_ORDER")
    with pytest.raises(SizeLimitError):
        rg.make_zmod(5000)


def test_closed_subset_enumeration_is_order_independent(z8):
    # additive subgroups of Z/8: one per divisor
    base = rg.enumerate_closed_subsets(z8.order, [z8.zero], internal=(z8.add,))
    assert len(base) == 4

    @given(st.permutations(list(range(8))))
    @settings(max_examples=20, deadline=None)
    def check(perm):
        again = rg.enumerate_closed_subsets(z8.order, [z8.zero], internal=(z8.add,),
                                            element_order=perm)
        assert {rg.mask_elements(m) for m in again} == {rg.mask_elements(m) for m in base}

    check()


def test_hom_validation(z4, f2):
    assert rg.RingHom(z4, f2, np.array([0, 1, 0, 1])).map.shape == (4,)  # reduction mod 2
    with pytest.raises(PreconditionError):
        rg.RingHom(z4, f2, np.array([0, 1, 1, 0]))  # not additive at 1+1
    with pytest.raises(PreconditionError):
        rg.RingHom(z4, z4, np.array([0, 2, 0, 2]))  # does not preserve one


def test_compose_and_identity(z4):
    ident = rg.identity_hom(z4)
    sq = rg.product([z4, z4])
    comp = rg.compose(ident, sq.diagonal)
    assert np.array_equal(comp.map, sq.diagonal.map)
