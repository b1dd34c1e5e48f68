from __future__ import annotations

import itertools

import pytest

from endocalc import corpus
from endocalc.errors import IllegalRestriction, NotAProjection
from endocalc.fgab import FgAbGroup, torsion_subgroup
from endocalc.invariance import flat_commutes
from endocalc.prering import RingKind, RingPresentation, enumerate_slice
from endocalc.relations import Kind, add, apply, compose, constant_to_subgroup, equivalent, from_matrix, identity, neg
from endocalc.structure import (
    FieldTable,
    ZilberFailure,
    almost_centralizer_in_G,
    check_field,
    commensurable,
    decompose_lines,
    find_lines,
    gamma_images,
    localize_to_line,
    ore_witness,
    quasi_projection,
    zilber_field,
)

from oracles import finite_closure

Z, Z2 = FgAbGroup(1), FgAbGroup(2)
e11 = from_matrix(Z2, [[1, 0], [0, 0]])
e22 = from_matrix(Z2, [[0, 0], [0, 1]])
swap = from_matrix(Z2, [[0, 1], [1, 0]])
dbl = from_matrix(Z, [[2]])
X_AXIS, Y_AXIS = Z2.subgroup([(1, 0)]), Z2.subgroup([(0, 1)])


class TestImages:
    def test_projection_images(self):
        imgs = {e.image for e in gamma_images(RingPresentation(Z2, [e11]), 2)}
        assert {Z2.relations, X_AXIS, Z2.whole} <= imgs

    def test_zero_ring(self):
        imgs = gamma_images(RingPresentation(Z, [], identity_included=False), 2)
        assert [e.image for e in imgs] == [Z.relations]

    def test_doubling_scalars(self):
        for e in gamma_images(RingPresentation(Z, [dbl]), 3):
            if e.image != Z.relations:
                assert e.rank == 1 and e.image.index == abs(e.element._value((1,))[0])

    def test_commensurable(self):
        assert commensurable(Z.subgroup([(2,)]), Z.subgroup([(3,)]))
        assert not commensurable(X_AXIS, Z2.whole)


class TestLines:
    def test_axes(self):
        lines = [c.line for c in find_lines(RingPresentation(Z2, [e11, swap], identity_included=False), 2)]
        assert lines == [X_AXIS, Y_AXIS]
        assert all(line.rank == 1 for line in lines)

    def test_diagonals_once_identity_is_an_atom(self):
        # 1 + swap and 1 - swap cost 2 and have rank-one images
        lines = [c.line for c in find_lines(RingPresentation(Z2, [e11, swap]), 2)]
        assert lines == [X_AXIS, Z2.subgroup([(1, 1)]), Y_AXIS, Z2.subgroup([(1, -1)])]

    def test_identity_ring(self):
        certs = find_lines(RingPresentation(Z, []), 2)
        assert [c.line for c in certs] == [Z.whole]

    def test_doubling_line(self):
        certs = find_lines(RingPresentation(Z, [dbl], identity_included=False), 2)
        assert [c.line for c in certs] == [Z.subgroup([(2,)])]

    def test_certificate(self):
        cert = find_lines(RingPresentation(Z2, [e11, swap]), 2)[0]
        assert cert.witness.im == cert.line and cert.contained_images_checked >= 1


class TestLocalize:
    def test_axis_with_scalars(self):
        gamma = RingPresentation(Z2, [e11, swap])
        delta = RingPresentation(Z2, [from_matrix(Z2, [[3, 0], [0, 3]])])
        cert = find_lines(gamma, 2)[0]
        gl, dl = localize_to_line(gamma, delta, cert)
        assert gl.ambient == Z
        assert any(g.graph == identity(Z).graph for g in gl.generators)
        assert [d.graph for d in dl.generators] == [from_matrix(Z, [[3]]).graph]

    def test_full_line(self):
        gamma = RingPresentation(Z, [dbl])
        delta = RingPresentation(Z, [from_matrix(Z, [[3]])])
        cert = find_lines(gamma, 2)[0]
        gl, dl = localize_to_line(gamma, delta, cert)
        assert dl.generators[0].graph == delta.generators[0].graph
        assert dbl.graph in [g.graph for g in gl.generators]

    def test_constant_inside_line(self):
        a = FgAbGroup(1, [2])
        line = a.whole
        gamma = RingPresentation(a, [])
        c = constant_to_subgroup(a, torsion_subgroup(a))
        cert = find_lines(gamma, 1)[0]
        assert cert.line == line
        _, dl = localize_to_line(gamma, RingPresentation(a, [c]), cert)
        assert dl.generators[0].kat.order == 2 and dl.generators[0].im.order == 2

    def test_not_weakly_invariant(self):
        gamma = RingPresentation(Z2, [e11, swap])
        cert = find_lines(gamma, 2)[0]
        with pytest.raises(IllegalRestriction):
            localize_to_line(gamma, RingPresentation(Z2, [from_matrix(Z2, [[1, 0], [1, 1]])]), cert)


class TestQuasiProjection:
    def test_idempotent_matrix(self):
        assert quasi_projection(e11, X_AXIS, Z2.relations).graph == e11.graph

    def test_not_surjective(self):
        with pytest.raises(NotAProjection) as e:
            quasi_projection(from_matrix(Z2, [[2, 0], [0, 0]]), X_AXIS, Z2.relations)
        assert e.value.clause == "surjectivity"

    def test_other_clauses(self):
        with pytest.raises(NotAProjection) as e:
            quasi_projection(swap, X_AXIS, Z2.relations)
        assert e.value.clause == "image"
        with pytest.raises(NotAProjection) as e:
            quasi_projection(e11, X_AXIS, X_AXIS)
        assert e.value.clause == "finite"

    def test_torsion_kat_outside_line(self):
        a = FgAbGroup(2, [2])
        gamma = add(from_matrix(a, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]), constant_to_subgroup(a, torsion_subgroup(a)))
        line = a.subgroup([(1, 0, 0)])
        with pytest.raises(NotAProjection) as e:
            quasi_projection(gamma, line, torsion_subgroup(a) & line)
        assert e.value.clause == "image"

    def test_torsion_kat_inside_line(self):
        a = FgAbGroup(2, [2])
        t = torsion_subgroup(a)
        gamma = add(from_matrix(a, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]), constant_to_subgroup(a, t))
        line = a.subgroup([(1, 0, 0), (0, 0, 1)])
        pi = quasi_projection(gamma, line, t & line)
        assert pi.kind == Kind.ENDOGENY and pi.kat == t
        assert apply(add(pi, neg(identity(a))), line) <= t
        assert equivalent(compose(pi, pi), pi)

    def test_plain_torsion_example(self):
        a = FgAbGroup(2, [2])
        line = a.subgroup([(1, 0, 0)])
        pi = quasi_projection(from_matrix(a, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]), line, torsion_subgroup(a) & line)
        assert pi.kind == Kind.ENDOGENY and pi.kat == a.relations


class TestDecompose:
    def test_coordinate_projections(self):
        gamma = RingPresentation(Z2, [e11, e22, swap])
        delta = RingPresentation(Z2, [from_matrix(Z2, [[2, 0], [0, 2]])])
        rep = decompose_lines(gamma, delta, 2)
        assert rep.complete and rep.residual == Z2.relations
        assert rep.lines == [X_AXIS, Y_AXIS]
        assert rep.projections[0].graph == e11.graph
        assert rep.projections[1].graph == compose(e22, add(identity(Z2), neg(e11))).graph == e22.graph
        assert all(rep.checks.values())

    def test_rank_one(self):
        rep = decompose_lines(RingPresentation(Z, []), RingPresentation(Z, [from_matrix(Z, [[3]])]), 1)
        assert rep.complete and len(rep.projections) == 1
        assert equivalent(rep.projections[0], identity(Z)) and rep.residual == Z.relations

    def test_blocks(self):
        inst = {i.name: i for i in corpus.decomposition_instances()}["Z4-blocks"]
        rep = decompose_lines(inst.gamma, inst.delta, inst.bound)
        assert rep.complete and [line.rank for line in rep.lines] == [2, 2]
        assert rep.bikatakernel_bound == inst.gamma.ambient.relations
        assert all(rep.checks.values())

    def test_incomplete_is_reported(self):
        shear = from_matrix(Z2, [[1, 1], [0, 1]])
        rep = decompose_lines(RingPresentation(Z2, [shear]), RingPresentation(Z2, []), 1)
        # the full group is the only line; its projection is the identity
        assert rep.complete and rep.lines == [Z2.whole]

    @pytest.mark.parametrize("inst", corpus.decomposition_instances(), ids=lambda i: i.name)
    def test_corpus(self, inst):
        rep = decompose_lines(inst.gamma, inst.delta, inst.bound)
        assert rep.complete, rep.blocking
        assert all(rep.checks.values()), rep.checks
        for p, line, l0 in zip(rep.raw_projections, rep.lines, rep.line_zeros):
            for g in line.generators():
                # pi[l] = l + L_0, as cosets
                assert (g, g) in p and apply(p, line.ambient.subgroup([g])) <= line.ambient.subgroup([g]) + l0 + p.kat


class TestOre:
    def test_two_three(self):
        ring = RingPresentation(Z, [from_matrix(Z, [[2]]), from_matrix(Z, [[3]])])
        sl = enumerate_slice(ring, 2)
        t, t2 = ore_witness(from_matrix(Z, [[2]]), from_matrix(Z, [[3]]), sl)
        assert t.graph == from_matrix(Z, [[3]]).graph and t2.graph == from_matrix(Z, [[2]]).graph

    def test_equal_pair(self):
        sl = enumerate_slice(RingPresentation(Z, [dbl]), 2)
        t, t2 = ore_witness(dbl, dbl, sl)
        assert t.graph == t2.graph == identity(Z).graph

    def test_f4_exhaustive(self):
        v = FgAbGroup(0, [2, 2])
        ring = RingPresentation(v, [from_matrix(v, [[0, 1], [1, 1]])])
        sl = enumerate_slice(ring, 2)
        nonzero = [e for e in sl.elements if e.im != v.relations]
        assert len(nonzero) == 3
        for x, y in itertools.product(nonzero, repeat=2):
            t, t2 = ore_witness(x, y, sl)
            assert compose(x, t).graph == compose(y, t2).graph


class TestZilber:
    def test_f4(self):
        v = FgAbGroup(0, [2, 2])
        t = zilber_field(v, [from_matrix(v, [[0, 1], [1, 1]])])
        assert isinstance(t, FieldTable) and t.order == 4 and check_field(t)
        # the module map a -> a * base_point is a bijection onto A
        assert {tuple(x) for _, x in t.module_iso} == finite_closure([(1, 0), (0, 1)], (2, 2))

    def test_f25(self):
        f = FgAbGroup(0, [5, 5])
        m = [[0, 3], [1, 4]]
        t = zilber_field(f, [from_matrix(f, m)])
        assert t.order == 25 and check_field(t)
        assert len({tuple(x) for _, x in t.module_iso}) == 25

    def test_not_minimal(self):
        z4 = FgAbGroup(0, [4])
        t = zilber_field(z4, [from_matrix(z4, [[3]])])
        assert isinstance(t, ZilberFailure) and t.reason == "not G-minimal" and not t

    def test_check_field_rejects_broken_table(self):
        v = FgAbGroup(0, [2, 2])
        t = zilber_field(v, [from_matrix(v, [[0, 1], [1, 1]])])
        broken = FieldTable(t.order, t.elements, t.add_table, [row[:] for row in t.mul_table], t.module_iso, t.base_point, t.generator_indices)
        broken.mul_table[2][2] = 0
        assert not check_field(broken)


class TestAlmostCentralizer:
    def test_flags(self):
        gens = [identity(Z2), from_matrix(Z2, [[1, 1], [0, 1]]), from_matrix(Z2, [[-1, 0], [0, -1]])]
        assert almost_centralizer_in_G(gens, Z2) == [0]
