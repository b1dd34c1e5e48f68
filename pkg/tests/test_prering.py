from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from endocalc import corpus
from endocalc.config import Caps, default_caps, parse_caps
from endocalc.errors import ClassificationError, EnumerationTooLarge, PreconditionError, QuotientNotInvariant
from endocalc.fgab import FgAbGroup, torsion_subgroup
from endocalc.invariance import Mode, invariance
from endocalc.prering import (
    RingKind,
    RingPresentation,
    bikatakernel,
    domain_stabilized,
    enumerate_slice,
    global_domain,
    global_katakernel,
    inequivalence_probe,
    max_finite_weakly_invariant,
    push,
    quotient_action,
    saturate,
)
from endocalc.relations import Kind, compose, constant_to_subgroup, from_matrix, from_pairs, identity, zero

from conftest import endogenies, groups

Z, ZT = FgAbGroup(1), FgAbGroup(1, [2])
dbl = from_matrix(Z, [[2]])
half = from_pairs(Z, [((2,), (1,))])


def scalar_slice(atoms, bound, negate=True):
    """Integers reachable at cost <= bound from the given scalar atoms (cost 1 each)."""
    levels = [{0}]
    seen = {0}
    for c in range(1, bound + 1):
        lv = set(atoms) if c == 1 else set()
        for i in range(1, c):
            for x in levels[i]:
                for y in levels[c - i]:
                    lv |= {x + y, x * y}
        if negate:
            lv |= {-x for x in lv}
        lv -= seen
        seen |= lv
        levels.append(lv)
    return seen


def scalars(sl):
    return {sl_el._value((1,))[0] for sl_el in sl.elements}


class TestEnumerate:
    def test_doubling_bound_three(self):
        sl = enumerate_slice(RingPresentation(Z, [dbl]), 3)
        got = scalars(sl)
        assert {0, 1, 2, 3, 4, -2} <= got
        assert got == scalar_slice([1, 2], 3)
        assert len(sl.elements) == 15

    @pytest.mark.parametrize("bound,size", [(1, 5), (2, 9), (3, 15), (4, 25)])
    def test_doubling_sizes(self, bound, size):
        sl = enumerate_slice(RingPresentation(Z, [dbl]), bound)
        assert len(sl.elements) == size == len(scalar_slice([1, 2], bound))

    def test_identity_bound_two(self):
        sl = enumerate_slice(RingPresentation(Z, []), 2)
        assert scalars(sl) == {0, 1, 2, -1, -2}

    def test_empty_generators(self):
        sl = enumerate_slice(RingPresentation(ZT, []), 1)
        assert [e.graph for e in sl.elements[:2]] == [zero(ZT).graph, identity(ZT).graph]

    def test_order_and_costs(self):
        sl = enumerate_slice(RingPresentation(Z, [dbl]), 2)
        assert sl.costs == sorted(sl.costs)
        assert sl.elements[0].graph == zero(Z).graph and sl.elements[1].graph == identity(Z).graph
        assert sl.index_of(compose(dbl, dbl)) is not None

    def test_near_ring_has_no_negation(self):
        sl = enumerate_slice(RingPresentation(Z, [dbl], RingKind.NEAR_RING), 3)
        assert scalars(sl) == scalar_slice([1, 2], 3, negate=False)

    def test_word_bound_cap(self):
        with pytest.raises(EnumerationTooLarge):
            enumerate_slice(RingPresentation(Z, [dbl]), 9)
        with pytest.raises(EnumerationTooLarge):
            enumerate_slice(RingPresentation(Z, [dbl]), 4, Caps(slice_elements=10))

    def test_generator_kind_checked(self):
        with pytest.raises(ClassificationError):
            RingPresentation(Z, [half])
        RingPresentation(Z, [half], RingKind.NEAR_RING)


class TestKatakernel:
    def test_doubling(self):
        assert global_katakernel(RingPresentation(Z, [dbl])) == Z.relations

    def test_constant_and_doubling(self):
        d = from_matrix(ZT, [[2, 0], [0, 1]])
        c = constant_to_subgroup(ZT, ZT.subgroup([(0, 1)]))
        assert global_katakernel(RingPresentation(ZT, [c, d])) == ZT.subgroup([(0, 1)])

    @given(st.data())
    def test_matches_word_oracle(self, data):
        a = data.draw(groups(max_free=1))
        gens = [data.draw(endogenies(a)) for _ in range(data.draw(st.integers(1, 2)))]
        ring = RingPresentation(a, gens)
        oracle = a.relations
        for e in enumerate_slice(ring, 4).elements:
            oracle = oracle + e.kat
        assert global_katakernel(ring) == oracle

    @given(st.data())
    def test_bikatakernel_is_sum(self, data):
        a = data.draw(groups(max_free=1))
        g, d = RingPresentation(a, [data.draw(endogenies(a))]), RingPresentation(a, [data.draw(endogenies(a))])
        assert bikatakernel(g, d) == global_katakernel(g) + global_katakernel(d)


class TestDomain:
    def test_halving_shrinks(self):
        ring = RingPresentation(Z, [half], RingKind.NEAR_RING)
        assert global_domain(ring, 1) == (Z.subgroup([(2,)]), False)
        assert global_domain(ring, 2)[0] == Z.subgroup([(4,)])
        assert global_domain(ring, 3) == (Z.subgroup([(8,)]), False)
        assert not domain_stabilized(ring, 3)

    def test_total_ring(self):
        ring = RingPresentation(ZT, [from_matrix(ZT, [[3, 0], [0, 1]])], RingKind.NEAR_RING)
        assert global_domain(ring, 2) == (ZT.whole, True)

    def test_finite_group_is_exact(self):
        a = FgAbGroup(0, [4])
        h = from_pairs(a, [((2,), (1,))])
        assert h.kind == Kind.QUASI_ENDO
        ring = RingPresentation(a, [h], RingKind.NEAR_RING)
        d, exact = global_domain(ring, 1)
        # h sends 2 to the odd classes, outside its own domain, so h o h lives on 0
        assert exact and d == a.relations
        assert compose(h, h).dom == a.relations
        assert domain_stabilized(ring, 2)

    def test_needs_near_ring(self):
        with pytest.raises(PreconditionError):
            global_domain(RingPresentation(Z, [dbl]), 2)

    def test_saturate_needs_finite(self):
        with pytest.raises(PreconditionError):
            saturate(RingPresentation(Z, [dbl]))

    def test_saturate_f4(self):
        v = FgAbGroup(0, [2, 2])
        ring = RingPresentation(v, [from_matrix(v, [[0, 1], [1, 1]])])
        assert len(saturate(ring)) == 4


class TestMaxFinite:
    def test_examples(self):
        d = from_matrix(ZT, [[2, 0], [0, 1]])
        assert max_finite_weakly_invariant(RingPresentation(ZT, [d])) == ZT.subgroup([(0, 1)])
        z2 = FgAbGroup(2)
        assert max_finite_weakly_invariant(RingPresentation(z2, [from_matrix(z2, [[1, 1], [0, 1]])])) == z2.relations
        a = FgAbGroup(1, [2, 4])
        c = constant_to_subgroup(a, torsion_subgroup(a))
        assert max_finite_weakly_invariant(RingPresentation(a, [c, from_matrix(a, [[1, 0, 0], [0, 1, 0], [0, 0, 3]])])) == torsion_subgroup(a)


class TestQuotient:
    def test_kat_quotient_is_honest(self):
        d = from_matrix(ZT, [[2, 0], [0, 1]])
        c = constant_to_subgroup(ZT, ZT.subgroup([(0, 1)]))
        ring = RingPresentation(ZT, [d, c])
        q = quotient_action(ring, global_katakernel(ring))
        assert q.ambient == Z
        assert all(g.kat == q.ambient.relations for g in q.generators)
        assert q.generators[0].graph == from_matrix(Z, [[2]]).graph

    def test_zero_is_identity(self):
        d = from_matrix(ZT, [[2, 0], [1, 1]])
        q = quotient_action(RingPresentation(ZT, [d]), ZT.relations)
        assert q.ambient == ZT and q.generators[0].graph == d.graph

    def test_refusal_witness(self):
        ring, a0 = corpus.quotient_counterexample()
        with pytest.raises(QuotientNotInvariant) as e:
            quotient_action(ring, a0)
        x, y = e.value.witness
        assert e.value.generator == 1
        assert a0.contains(x) and (x, y) in ring.generators[1] and not a0.contains(y)

    def test_push_is_projection_of_graph(self):
        d = from_matrix(ZT, [[3, 0], [0, 1]])
        q = quotient_action(RingPresentation(ZT, [d]), torsion_subgroup(ZT)).origin
        assert push(d, q).graph == from_matrix(Z, [[3]]).graph


class TestProbe:
    def test_doubling_scalars(self):
        assert inequivalence_probe(enumerate_slice(RingPresentation(Z, [dbl]), 4)) >= 7

    def test_zero_ring(self):
        assert inequivalence_probe(enumerate_slice(RingPresentation(Z, [], identity_included=False), 3)) == 1

    def test_finite_ring_single_class(self):
        v = FgAbGroup(0, [2, 2])
        sl = enumerate_slice(RingPresentation(v, [from_matrix(v, [[0, 1], [1, 1]])]), 2)
        assert inequivalence_probe(sl) == 1


class TestCaps:
    def test_parse(self):
        c = parse_caps("word_bound=3, ring_elements=50")
        assert c.word_bound == 3 and c.ring_elements == 50 and c.torsion_order == Caps().torsion_order

    def test_env(self, monkeypatch):
        monkeypatch.setenv("ENDOCALC_CAPS", "word_bound=2")
        assert default_caps().word_bound == 2
        with pytest.raises(EnumerationTooLarge):
            enumerate_slice(RingPresentation(Z, [dbl]), 3)

    def test_bad_key(self):
        with pytest.raises(ValueError):
            parse_caps("nonsense=3")
