from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from endocalc.errors import DimensionError
from endocalc.fgab import (
    INFINITE,
    FgAbGroup,
    canonicalize,
    finite_perturbation_rank_check,
    product_and_projections,
    quotient,
    rank_and_index,
    relative_index,
    subgroup_intersect,
    subgroup_sum,
    torsion_and_finite_lattice,
    torsion_subgroup,
)

from conftest import elements, finite_subgroups, groups, subgroups
from oracles import all_elements, box, finite_closure, lattice_rows, member_mask

Z, Z2 = FgAbGroup(1), FgAbGroup(2)


def same_on_box(b1, b2, r=16):
    pts = box(b1.ambient.ncoords, r)
    m1 = member_mask(lattice_rows(b1.generators(), b1.ambient.moduli), pts)
    m2 = member_mask(lattice_rows(b2.generators(), b2.ambient.moduli), pts)
    return bool((m1 == m2).all())


class TestCanonicalize:
    def test_already_canonical(self):
        assert canonicalize([(2, 0), (0, 1)], Z2).basis == ((2, 0), (0, 1))

    def test_normal_form_matches_box_oracle(self):
        b = canonicalize([(2, 4), (6, 8)], Z2)
        assert b == canonicalize([(2, 0), (0, 4)], Z2)
        assert same_on_box(b, Z2.subgroup([(2, 0), (0, 4)]))

    def test_empty_is_zero(self):
        for a in (Z, Z2, FgAbGroup(1, [2])):
            assert canonicalize([], a) == a.relations
            assert canonicalize([], a).order == 1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            canonicalize([(1, 2, 3)], Z2)

    @given(st.data())
    def test_idempotent_and_order_free(self, data):
        a = data.draw(groups())
        gens = data.draw(st.lists(elements(a), max_size=3))
        b = canonicalize(gens, a)
        assert canonicalize(b.basis, a) == b
        assert canonicalize(list(reversed(gens)), a) == b
        assert canonicalize(gens + [tuple(x + y for x, y in zip(gens[0], gens[-1]))] if gens else gens, a) == b

    @given(st.data())
    def test_membership_matches_smith_oracle(self, data):
        a = data.draw(groups())
        b = data.draw(subgroups(a))
        pts = box(a.ncoords, 5)
        want = member_mask(lattice_rows(b.generators(), a.moduli), pts)
        got = np.array([b.contains(tuple(int(x) for x in p)) for p in pts])
        assert (want == got).all()


class TestSumIntersect:
    def test_examples(self):
        assert Z.subgroup([(2,)]) + Z.subgroup([(3,)]) == Z.whole
        b = Z2.subgroup([(2, 0), (0, 3)])
        assert b + Z2.relations == b
        assert subgroup_sum(Z2.subgroup([(2, 0)]), Z2.subgroup([(0, 3)])) == b
        assert same_on_box(subgroup_sum(Z2.subgroup([(2, 0)]), Z2.subgroup([(0, 3)])), b)
        assert Z.subgroup([(2,)]) & Z.subgroup([(3,)]) == Z.subgroup([(6,)])
        assert b & b == b
        meet = subgroup_intersect(Z2.subgroup([(2, 0), (0, 1)]), Z2.subgroup([(3, 0), (0, 1)]))
        assert meet == Z2.subgroup([(6, 0), (0, 1)])
        assert same_on_box(meet, Z2.subgroup([(6, 0), (0, 1)]))

    @given(st.data())
    def test_lattice_laws(self, data):
        a = data.draw(groups())
        b1, b2 = data.draw(subgroups(a)), data.draw(subgroups(a))
        s, m = b1 + b2, b1 & b2
        assert b1 <= s and b2 <= s and m <= b1 and m <= b2
        assert s.rank + m.rank == b1.rank + b2.rank
        pts = box(a.ncoords, 4)
        in1 = member_mask(lattice_rows(b1.generators(), a.moduli), pts)
        in2 = member_mask(lattice_rows(b2.generators(), a.moduli), pts)
        inm = member_mask(lattice_rows(m.generators(), a.moduli), pts)
        assert (inm == (in1 & in2)).all()


class TestRankIndex:
    def test_examples(self):
        a = FgAbGroup(1, [2])
        assert rank_and_index(a.subgroup([(2, 0), (0, 1)])) == (1, 2)
        assert rank_and_index(Z2.relations) == (0, INFINITE)
        assert rank_and_index(Z2.subgroup([(2, 0), (0, 3)])) == (2, 6)

    def test_index_by_coset_count(self):
        # cosets of <(2,0),(0,3)> meet the box [0,2) x [0,3) exactly once each
        b = Z2.subgroup([(2, 0), (0, 3)])
        reps = {tuple(q.project(v)) for q in [quotient(Z2, b)] for v in itertools.product(range(6), range(6))}
        assert len(reps) == b.index == 6

    def test_relative_index(self):
        assert relative_index(Z.subgroup([(4,)]), Z.subgroup([(2,)])) == 2
        assert relative_index(Z2.subgroup([(1, 0)]), Z2.whole) == INFINITE


class TestQuotient:
    def test_cokernel(self):
        q = quotient(Z2, Z2.subgroup([(2, 0), (0, 3)]))
        assert q.quotient == FgAbGroup(0, [6])
        table = {q.project(v) for v in itertools.product(range(-3, 4), repeat=2)}
        assert len(table) == 6

    def test_trivial_quotients(self):
        a = FgAbGroup(1, [2])
        q = quotient(a, a.relations)
        assert q.quotient == a
        assert all(q.project(v) == a.reduce(v) for v in [(3, 1), (-2, 0)])
        assert quotient(a, a.whole).quotient.ncoords == 0

    @given(st.data())
    def test_kernel_is_b(self, data):
        a = data.draw(groups())
        b = data.draw(subgroups(a))
        q = quotient(a, b)
        qa = q.quotient
        for g in b.generators():
            assert qa.reduce(q.project(g)) == qa.zero()
        for v in [data.draw(elements(a)) for _ in range(5)]:
            assert (qa.reduce(q.project(v)) == qa.zero()) == b.contains(v)
            assert qa.reduce(q.project(q.lift(q.project(v)))) == qa.reduce(q.project(v))
        if b.index != INFINITE:
            assert qa.is_finite and qa.torsion_order == b.index


class TestTorsion:
    def test_examples(self):
        a = FgAbGroup(1, [2])
        t, subs = torsion_and_finite_lattice(a)
        assert t == a.subgroup([(0, 1)]) == torsion_subgroup(a)
        assert subs == [a.relations, t]
        t, subs = torsion_and_finite_lattice(Z2)
        assert t == Z2.relations and subs == [Z2.relations]

    @pytest.mark.parametrize("tors", [(2, 2), (2, 4), (4,), (2, 6), (3, 3), (12,)])
    def test_lattice_count_by_brute_force(self, tors):
        a = FgAbGroup(0, tors)
        els = list(all_elements(tors))
        # every subgroup of a group of rank <= 2 has two generators
        truth = {frozenset(finite_closure([x, y], tors)) for x in els for y in els}
        _, subs = torsion_and_finite_lattice(a)
        assert len(subs) == len(truth)
        assert {frozenset(s.elements()) for s in subs} == truth

    def test_klein_four(self):
        assert len(torsion_and_finite_lattice(FgAbGroup(0, [2, 2]))[1]) == 5


class TestProduct:
    def test_evident_maps(self):
        p = product_and_projections(Z, FgAbGroup(0, [2]))
        assert p.group == FgAbGroup(1, [2])
        assert p.embed1 == ((1,), (0,)) and p.project2 == ((0, 1),)

    def test_first_projection_recovers_z(self):
        p = product_and_projections(Z, Z)
        diag = p.group.subgroup([(1, 1)])
        image = Z.subgroup([tuple(sum(r[i] * g[i] for i in range(2)) for r in p.project1) for g in diag.generators()])
        assert image == Z.whole

    def test_triple_product(self):
        a = FgAbGroup(1, [2])
        pair = product_and_projections(a, a)
        p = product_and_projections(pair.group, a)
        assert p.group.ncoords == 6
        mv = lambda m, v: tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)
        x, y, z = (3, 1), (-2, 1), (5, 0)
        t = p.group.reduce([u + w for u, w in zip(mv(p.embed1, [s + r for s, r in zip(mv(pair.embed1, x), mv(pair.embed2, y))]), mv(p.embed2, z))])
        first = mv(pair.project1, mv(p.project1, t))
        third = mv(p.project2, t)
        assert (a.reduce(first), a.reduce(third)) == (a.reduce(x), a.reduce(z))

    @given(st.data())
    def test_project_embed_identity(self, data):
        a, b = data.draw(groups()), data.draw(groups())
        p = product_and_projections(a, b)
        mv = lambda m, v: tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)
        x = data.draw(elements(a))
        y = data.draw(elements(b))
        assert a.reduce(mv(p.project1, mv(p.embed1, x))) == a.reduce(x)
        assert b.reduce(mv(p.project2, mv(p.embed2, y))) == b.reduce(y)
        assert b.reduce(mv(p.project2, mv(p.embed1, x))) == b.zero()


class TestPerturbation:
    def test_examples(self):
        a = FgAbGroup(1, [2])
        b1, b2, c = a.subgroup([(2, 0)]), a.subgroup([(3, 0)]), a.subgroup([(0, 1)])
        assert finite_perturbation_rank_check(b1, b2, c)
        assert finite_perturbation_rank_check(b1, b2, a.relations)
        assert finite_perturbation_rank_check(b1, b1, c)

    @given(st.data())
    def test_random_triples(self, data):
        a = data.draw(groups())
        assert finite_perturbation_rank_check(data.draw(subgroups(a)), data.draw(subgroups(a)), data.draw(finite_subgroups(a)))
