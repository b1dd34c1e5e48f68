"""Lines, localized rings, quasi-projections, decompositions and finite fields."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .config import Caps, default_caps
from .errors import EnumerationTooLarge, IllegalRestriction, NotAProjection, PreconditionError
from .fgab import Presentation, Subgroup, relative_index, torsion_and_finite_lattice, torsion_subgroup
from .invariance import CheckKind, Mode, commutes, flat_commutes, invariance
from .prering import EnumerationSlice, RingKind, RingPresentation, bikatakernel, enumerate_slice
from .relations import (
    BiRelation,
    Kind,
    add,
    apply,
    compose,
    constant_to_subgroup,
    converse,
    equivalent,
    from_matrix,
    identity,
    neg,
    preimage,
    restrict_corestrict,
    restrict_graph,
    transport,
)


@dataclass(frozen=True)
class ImageEntry:
    element: BiRelation
    image: Subgroup
    rank: int


@dataclass(frozen=True)
class LineCertificate:
    line: Subgroup
    witness: BiRelation
    slice_bound: int
    contained_images_checked: int

    @property
    def rank(self) -> int:
        return self.line.rank


def commensurable(b1: Subgroup, b2: Subgroup) -> bool:
    r = (b1 & b2).rank
    return r == b1.rank == b2.rank


def gamma_images(ring: RingPresentation, word_bound: int, caps: Optional[Caps] = None, sl: Optional[EnumerationSlice] = None) -> List[ImageEntry]:
    """Images of the slice's class representatives, each distinct image once."""
    sl = sl or enumerate_slice(ring, word_bound, caps)
    seen = set()
    out = []
    for x in sl.representatives:
        img = x.im
        if img.basis in seen:
            continue
        seen.add(img.basis)
        out.append(ImageEntry(x, img, img.rank))
    return out


def find_lines(ring: RingPresentation, word_bound: int, caps: Optional[Caps] = None, within: Optional[Subgroup] = None, sl: Optional[EnumerationSlice] = None) -> List[LineCertificate]:
    """Infinite images of least rank, one per commensurability class.

    ``within`` restricts the search to images contained in a subgroup.
    """
    entries = gamma_images(ring, word_bound, caps, sl)
    infinite = [e for e in entries if e.rank > 0 and (within is None or e.image <= within)]
    if not infinite:
        return []
    r = min(e.rank for e in infinite)
    certs: List[LineCertificate] = []
    for e in infinite:
        if e.rank != r or any(commensurable(e.image, c.line) for c in certs):
            continue
        certs.append(LineCertificate(e.image, e.element, word_bound, len(infinite)))
    return certs


def localize_to_line(gamma: RingPresentation, delta: RingPresentation, cert: LineCertificate, word_bound: Optional[int] = None, caps: Optional[Caps] = None):
    """``(Gamma_L, Delta_L)`` presented on the line itself.

    ``Delta_L`` restricts Delta's generators; ``Gamma_L`` is generated by the
    restrictions of slice elements whose image lies in ``L``. Both rings carry
    the line's ``SubgroupPresentation`` as ``origin``.
    """
    line = cert.line
    rep = invariance(line, delta.generators, Mode.WEAK)
    if not rep.holds:
        i = rep.failing[0]
        raise IllegalRestriction(f"line is not weakly invariant under Delta generator {i}", rep.verdicts[i].witness, generator=i)
    pres = line.present()
    d_gens = tuple(restrict_corestrict(d, line)[0] for d in delta.generators)
    bound = cert.slice_bound if word_bound is None else word_bound
    sl = enumerate_slice(gamma, bound, caps)
    g_gens: List[BiRelation] = []
    seen = set()
    for x in sl.representatives:
        if not x.im <= line:
            continue
        y = transport(restrict_graph(x, line), pres)
        if y.graph.basis in seen or y.im == y.ambient.relations:
            continue
        seen.add(y.graph.basis)
        g_gens.append(y)
    if not g_gens:
        raise PreconditionError("no slice element has its image inside the line")
    gl = RingPresentation(pres.group, tuple(g_gens), RingKind.PRE_RING, False, origin=pres)
    dl = RingPresentation(pres.group, d_gens, delta.kind, delta.identity_included, origin=pres)
    # localization keeps commutation: check it whenever the inputs commute
    kind = CheckKind.SHARP if delta.kind == RingKind.PRE_RING else CheckKind.FLAT
    if all(commutes(d, g, kind).holds for d in delta.generators for g in gamma.generators):
        for d in d_gens:
            for g in g_gens:
                if not commutes(d, g, kind).holds:
                    raise AssertionError("localized generators fail to commute")
    return gl, dl


def quasi_projection(gamma: BiRelation, line: Subgroup, l0: Subgroup) -> BiRelation:
    """Endogeny onto ``L`` acting as the identity on ``L`` up to ``L_0``.

    Built as ``conv(gamma_L) o (gamma + A x L_0) + A x L_0`` with
    ``gamma_L = gamma & (L x L)``, so no coset representatives are chosen.
    """
    a = gamma.ambient
    if not gamma.im <= line:
        raise NotAProjection("image", "the relation's image is not inside L")
    if not l0.is_finite:
        raise NotAProjection("finite", "L_0 must be finite")
    if not l0 <= line:
        raise NotAProjection("finite", "L_0 must lie inside L")
    if apply(gamma, line) + l0 != line:
        missing = next(g for g in line.generators() if not (apply(gamma, line) + l0).contains(g))
        raise NotAProjection("surjectivity", "gamma[L] + L_0 is a proper subgroup of L", missing)
    g_l = restrict_graph(gamma, line)
    pre = preimage(g_l, l0)
    if pre != l0:
        extra = next((g for g in pre.generators() if not l0.contains(g)), None)
        raise NotAProjection("preimage", "the preimage of L_0 under gamma_L is not L_0", extra)
    c = constant_to_subgroup(a, l0)
    return add(compose(converse(g_l), add(gamma, c)), c)


@dataclass
class DecompositionReport:
    projections: List[BiRelation]
    lines: List[Subgroup]
    line_zeros: List[Subgroup]
    residual: Subgroup
    bikatakernel_bound: Subgroup
    complete: bool
    word_bound: int
    checks: Dict[str, bool] = field(default_factory=dict)
    blocking: Optional[str] = None
    raw_projections: List[BiRelation] = field(default_factory=list)


def _projection_candidates(sl: EnumerationSlice, lines: Sequence[LineCertificate]):
    torsion = torsion_subgroup(sl.ring.ambient)
    cands = []
    for li, cert in enumerate(lines):
        line = cert.line
        l0 = torsion & line
        for xi, x in enumerate(sl.representatives):
            if not x.im <= line:
                continue
            img = apply(x, line) + l0
            if img.rank != line.rank:
                continue
            cands.append((relative_index(img, line), li, xi, line, l0, x))
    cands.sort(key=lambda c: c[:3])
    return cands


def decompose_lines(gamma: RingPresentation, delta: RingPresentation, word_bound: int, caps: Optional[Caps] = None) -> DecompositionReport:
    """Split ``A`` into lines and a finite residual using quasi-projections.

    Each step takes the residual ``rho = 1 - (pi_1 + ... + pi_k)``, finds a
    line inside ``rho[A]``, builds its quasi-projection ``pi'`` and appends
    ``pi' o rho``. The report is partial when some residual admits no line
    with a projection inside the slice.
    """
    a = gamma.ambient
    one = identity(a)
    sl = enumerate_slice(gamma, word_bound, caps)
    projs: List[BiRelation] = []
    raws: List[BiRelation] = []
    lines: List[Subgroup] = []
    zeros: List[Subgroup] = []
    total: Optional[BiRelation] = None
    rho = one
    blocking = None
    for _ in range(a.free_rank + 1):
        h = rho.im
        if h.rank == 0:
            break
        certs = find_lines(gamma, word_bound, caps, within=h, sl=sl)
        built = None
        for _, _, _, line, l0, x in _projection_candidates(sl, certs):
            try:
                built = (quasi_projection(x, line, l0), line, l0)
                break
            except NotAProjection:
                continue
        if built is None:
            blocking = "no line with a quasi-projection inside the residual image"
            break
        p1, line, l0 = built
        pi = compose(p1, rho)
        projs.append(pi)
        raws.append(p1)
        lines.append(line)
        zeros.append(l0)
        total = pi if total is None else add(total, pi)
        rho = add(one, neg(total))
    h = rho.im
    complete = h.rank == 0
    bound = h
    for z in zeros:
        bound = bound + z
    report = DecompositionReport(projs, lines, zeros, h, bound, complete, word_bound, blocking=None if complete else (blocking or "residual still infinite"), raw_projections=raws)
    report.checks = decomposition_checks(report, gamma, delta, caps)
    return report


def decomposition_checks(rep: DecompositionReport, gamma: RingPresentation, delta: RingPresentation, caps: Optional[Caps] = None) -> Dict[str, bool]:
    a = gamma.ambient
    span = rep.residual
    for line in rep.lines:
        span = span + line
    one = identity(a)
    checks = {
        "finite_index": span.index != float("inf"),
        "pairwise_finite": all((x & y).is_finite for x, y in itertools.combinations(rep.lines, 2)),
        "idempotent_up_to_equivalence": all(equivalent(compose(p, p), p) for p in rep.projections),
        "identity_on_line": all(
            apply(add(p, neg(one)), line) <= p.kat for p, line in zip(rep.projections, rep.lines)
        ),
        "image_meets_coimage": all((p.im & add(one, neg(p)).im) <= p.kat for p in rep.projections),
    }
    checks.update(projection_contract(rep.raw_projections, rep.lines, rep.line_zeros, delta.generators))
    if a.torsion_order <= (caps or default_caps()).torsion_order:
        checks["bikatakernel_contained"] = bikatakernel(gamma, delta, caps) <= rep.bikatakernel_bound
    return checks


def projection_contract(raws: Sequence[BiRelation], lines: Sequence[Subgroup], zeros: Sequence[Subgroup], delta_gens: Sequence[BiRelation]) -> Dict[str, bool]:
    """The quasi-projection guarantees for each ``pi'`` on its line ``L`` with finite part ``L_0``."""
    out = {"projection_total": True, "projection_into_line": True, "projection_identity_mod_L0": True,
           "projection_idempotent_mod_L0": True, "projection_flat_with_delta": True}
    for p, line, l0 in zip(raws, lines, zeros):
        one = identity(p.ambient)
        out["projection_total"] &= p.kind == Kind.ENDOGENY
        out["projection_into_line"] &= p.im <= line
        out["projection_identity_mod_L0"] &= apply(add(p, neg(one)), line) <= l0
        out["projection_idempotent_mod_L0"] &= add(compose(p, p), neg(p)).im <= l0
        out["projection_flat_with_delta"] &= all(flat_commutes(p, d).holds for d in delta_gens)
    return out


def ore_witness(x: BiRelation, y: BiRelation, sl: EnumerationSlice) -> Optional[Tuple[BiRelation, BiRelation]]:
    """First ``(t, t')`` in slice order with ``x o t == y o t'`` as graphs and nonzero."""
    trivial = x.ambient.relations
    right: Dict[tuple, int] = {}
    for j, t2 in enumerate(sl.elements):
        right.setdefault(compose(y, t2).graph.basis, j)
    for i, t in enumerate(sl.elements):
        lt = compose(x, t)
        if lt.im == trivial:
            continue
        j = right.get(lt.graph.basis)
        if j is not None:
            return sl.elements[i], sl.elements[j]
    return None


# ---------------------------------------------------------------------------
# finite modules


Matrix = Tuple[Tuple[int, ...], ...]  # column images of the coordinate vectors


@dataclass(frozen=True)
class FieldTable:
    order: int
    elements: List[BiRelation]
    add_table: List[List[int]]
    mul_table: List[List[int]]
    module_iso: List[Tuple[int, Tuple[int, ...]]]
    base_point: Tuple[int, ...]
    generator_indices: List[int]
    zero_index: int = 0
    one_index: int = 1
    note: str = "finite scale: A_0 = 0 and G_0 = kernel of the action"


@dataclass(frozen=True)
class ZilberFailure:
    reason: str
    detail: str = ""
    witness: Optional[object] = None

    def __bool__(self) -> bool:
        return False


def _columns(rel: BiRelation) -> Matrix:
    n = rel.n
    return tuple(rel._value(tuple(int(i == j) for i in range(n))) for j in range(n))


def _apply_cols(a: Presentation, m: Matrix, v: Sequence[int]) -> Tuple[int, ...]:
    out = [0] * a.ncoords
    for c, col in zip(v, m):
        if c:
            for i, x in enumerate(col):
                out[i] += c * x
    return a.reduce(out)


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def zilber_field(a: Presentation, gens: Sequence[BiRelation], caps: Optional[Caps] = None):
    """Reconstruct the field generated by a commuting automorphism group of a finite module.

    Returns a ``FieldTable`` or a ``ZilberFailure`` naming the broken
    hypothesis (``not G-minimal``, ``zero divisor``, ``noncommutative``).
    """
    caps = caps or default_caps()
    if not a.is_finite:
        raise PreconditionError("the module must be finite")
    if a.torsion_order > caps.torsion_order:
        raise EnumerationTooLarge("torsion order", caps.torsion_order, a.torsion_order)
    n = a.ncoords
    mats: List[Matrix] = []
    for i, g in enumerate(gens):
        if g.ambient != a:
            raise PreconditionError(f"generator {i} acts on {g.ambient}, not {a}")
        if g.kind != Kind.ENDOGENY or not g.kat.is_finite or g.kat != a.relations:
            raise PreconditionError(f"generator {i} is not an endomorphism")
        if g.ker != a.relations:
            raise PreconditionError(f"generator {i} is not an automorphism")
        mats.append(_columns(g))
    for (i, g), (j, h) in itertools.combinations(enumerate(gens), 2):
        if compose(g, h).graph != compose(h, g).graph:
            raise PreconditionError(f"generators {i} and {j} do not commute")
    _, subs = torsion_and_finite_lattice(a, caps)
    for s in subs:
        if s == a.relations or s == a.whole:
            continue
        if invariance(s, gens, Mode.INVARIANT).holds:
            return ZilberFailure("not G-minimal", "a nontrivial proper subgroup is invariant", [list(v) for v in s.generators()])

    elems = list(a.torsion_elements())
    units = [tuple(int(i == j) for i in range(n)) for j in range(n)]

    def act(m: Matrix, v) -> Tuple[int, ...]:
        return _apply_cols(a, m, v)

    def mul(m1: Matrix, m2: Matrix) -> Matrix:
        return tuple(act(m1, col) for col in m2)

    def plus(m1: Matrix, m2: Matrix) -> Matrix:
        return tuple(a.reduce([x + y for x, y in zip(c1, c2)]) for c1, c2 in zip(m1, m2))

    zero_m: Matrix = tuple(a.zero() for _ in range(n))
    one_m: Matrix = tuple(units)
    ring: List[Matrix] = [zero_m, one_m]
    index = {zero_m: 0, one_m: 1}
    for m in mats:
        if m not in index:
            index[m] = len(ring)
            ring.append(m)
    start = 0
    while True:
        size = len(ring)
        for i in range(size):
            for j in range(size):
                if max(i, j) < start:
                    continue
                for m in (plus(ring[i], ring[j]), mul(ring[i], ring[j])):
                    if m not in index:
                        index[m] = len(ring)
                        ring.append(m)
                        if len(ring) > caps.ring_elements:
                            raise EnumerationTooLarge("ring elements", caps.ring_elements)
        if len(ring) == size:
            break
        start = size
    k = len(ring)
    add_t = [[index[plus(x, y)] for y in ring] for x in ring]
    mul_t = [[index[mul(x, y)] for y in ring] for x in ring]
    for i in range(k):
        for j in range(i + 1, k):
            if mul_t[i][j] != mul_t[j][i]:
                return ZilberFailure("noncommutative", "the generated ring is not commutative", (i, j))
    for i in range(1, k):
        for j in range(1, k):
            if mul_t[i][j] == 0:
                return ZilberFailure("zero divisor", "two nonzero ring elements multiply to zero", (i, j))
        if 1 not in mul_t[i]:
            return ZilberFailure("not invertible", "a nonzero ring element has no inverse", i)
    if not _is_prime_power(k):
        return ZilberFailure("order", f"ring order {k} is not a prime power")
    a0 = next(v for v in elems if any(v))
    iso = [(i, act(m, a0)) for i, m in enumerate(ring)]
    if len({v for _, v in iso}) != k or k != len(elems):
        return ZilberFailure("not faithful", "the orbit map of the base point is not a bijection", list(a0))
    rels = [from_matrix(a, [list(r) for r in zip(*m)]) for m in ring]
    return FieldTable(k, rels, add_t, mul_t, iso, a0, [index[m] for m in mats])


def check_field(t: FieldTable) -> bool:
    """Exhaustive field axioms plus the intertwining property of ``module_iso``."""
    k = t.order
    z, o = t.zero_index, t.one_index
    A, M = t.add_table, t.mul_table
    r = range(k)
    for x in r:
        if A[x][z] != x or M[x][o] != x:
            return False
        if not any(A[x][y] == z for y in r):
            return False
        if x != z and not any(M[x][y] == o for y in r):
            return False
        for y in r:
            if A[x][y] != A[y][x] or M[x][y] != M[y][x]:
                return False
            for w in r:
                if A[A[x][y]][w] != A[x][A[y][w]] or M[M[x][y]][w] != M[x][M[y][w]]:
                    return False
                if M[x][A[y][w]] != A[M[x][y]][M[x][w]]:
                    return False
    vec = dict(t.module_iso)
    for g in t.generator_indices:
        rel = t.elements[g]
        for i in r:
            if rel._value(vec[i]) != vec[M[g][i]]:
                return False
    # additive compatibility of the identification
    amb = t.elements[0].ambient
    for x in r:
        for y in r:
            if amb.reduce([p + q for p, q in zip(vec[x], vec[y])]) != vec[A[x][y]]:
                return False
    return True


def almost_centralizer_in_G(gens: Sequence[BiRelation], a: Presentation) -> List[int]:
    """Indices of generators whose fixed subgroup has full rank."""
    one = identity(a)
    return [i for i, g in enumerate(gens) if add(g, neg(one)).ker.rank == a.free_rank]
