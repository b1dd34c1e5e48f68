"""Finitely generated pre-rings and near-rings of bi-relations.

Slices are enumerated by cost, where a generator (or the identity) costs one,
zero costs nothing, and a sum or composite costs the sum of its operands'
costs. Negation is free but only enumerated for pre-rings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .config import Caps, default_caps
from .errors import AmbientMismatch, ClassificationError, EnumerationTooLarge, PreconditionError, QuotientNotInvariant
from .fgab import Presentation, QuotientPresentation, Subgroup, canonicalize, quotient, torsion_and_finite_lattice
from .invariance import Mode, invariance, invariance_one
from .relations import BiRelation, Kind, add, apply, compose, equivalent, identity, neg, pair_cover, zero


class RingKind(str, Enum):
    PRE_RING = "PRE_RING"
    NEAR_RING = "NEAR_RING"


@dataclass(frozen=True)
class RingPresentation:
    ambient: Presentation
    generators: Tuple[BiRelation, ...]
    kind: RingKind = RingKind.PRE_RING
    identity_included: bool = True
    origin: Optional[QuotientPresentation] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "kind", RingKind(self.kind))
        allowed = {Kind.ENDOGENY} if self.kind == RingKind.PRE_RING else {Kind.ENDOGENY, Kind.QUASI_ENDO}
        for i, g in enumerate(self.generators):
            if g.ambient != self.ambient:
                raise AmbientMismatch(f"generator {i} lives on {g.ambient}, not {self.ambient}")
            if g.kind not in allowed:
                raise ClassificationError(f"generator {i} is {g.kind.value}, not allowed in a {self.kind.value}")

    @property
    def atoms(self) -> List[BiRelation]:
        head = [identity(self.ambient)] if self.identity_included else []
        return head + list(self.generators)


@dataclass(frozen=True)
class EnumerationSlice:
    ring: RingPresentation
    word_bound: int
    elements: List[BiRelation]
    costs: List[int]

    @cached_property
    def equivalence_classes(self) -> List[List[int]]:
        """Partition of element indices under equivalence; first member is the representative."""
        classes: List[List[int]] = []
        for i, x in enumerate(self.elements):
            for cls in classes:
                if equivalent(x, self.elements[cls[0]]):
                    cls.append(i)
                    break
            else:
                classes.append([i])
        return classes

    @property
    def representatives(self) -> List[BiRelation]:
        return [self.elements[c[0]] for c in self.equivalence_classes]

    def index_of(self, rel: BiRelation) -> Optional[int]:
        for i, x in enumerate(self.elements):
            if x.graph == rel.graph:
                return i
        return None


class _Builder:
    def __init__(self, ring: RingPresentation, caps: Caps):
        self.ring = ring
        self.caps = caps
        self.elements: List[BiRelation] = []
        self.costs: List[int] = []
        self.seen: Dict[tuple, int] = {}
        self.levels: List[List[int]] = []

    def push(self, rel: BiRelation, cost: int, level: List[int]) -> None:
        key = rel.graph.basis
        if key in self.seen:
            return
        self.seen[key] = len(self.elements)
        level.append(len(self.elements))
        self.elements.append(rel)
        self.costs.append(cost)
        if len(self.elements) > self.caps.slice_elements:
            raise EnumerationTooLarge("slice elements", self.caps.slice_elements)

    def negate(self, level: List[int], cost: int) -> None:
        if self.ring.kind == RingKind.PRE_RING:
            for i in list(level):
                self.push(neg(self.elements[i]), cost, level)

    def level(self, c: int) -> List[int]:
        lv: List[int] = []
        if c == 0:
            self.push(zero(self.ring.ambient), 0, lv)
        else:
            if c == 1:
                for a in self.ring.atoms:
                    self.push(a, 1, lv)
            els = self.elements
            # operands strictly below this level; adding zero never helps
            for i in range(1, c // 2 + 1):
                for x in self.levels[i]:
                    for y in self.levels[c - i]:
                        if i == c - i and y < x:
                            continue
                        self.push(add(els[x], els[y]), c, lv)
            for i in range(1, c):
                for x in self.levels[i]:
                    for y in self.levels[c - i]:
                        self.push(compose(els[x], els[y]), c, lv)
            self.negate(lv, c)
            # composites with zero keep the cost of the other operand
            z = els[0]
            for x in list(lv):
                self.push(compose(els[x], z), c, lv)
                self.push(compose(z, els[x]), c, lv)
        self.levels.append(lv)
        return lv


def enumerate_slice(ring: RingPresentation, word_bound: int, caps: Optional[Caps] = None) -> EnumerationSlice:
    """Breadth-first closure by cost up to ``word_bound``, deduplicated by graph.

    Order within a level: atoms (identity first, then generators), sums,
    composites, then negations of the level's new elements.
    """
    caps = caps or default_caps()
    if word_bound < 0:
        raise ValueError("word bound must be nonnegative")
    if word_bound > caps.word_bound:
        raise EnumerationTooLarge("word bound", caps.word_bound, word_bound)
    b = _Builder(ring, caps)
    for c in range(word_bound + 1):
        b.level(c)
    return EnumerationSlice(ring, word_bound, b.elements, b.costs)


def saturate(ring: RingPresentation, caps: Optional[Caps] = None) -> List[BiRelation]:
    """Every element of the ring; only terminates for finite ambient groups."""
    caps = caps or default_caps()
    if not ring.ambient.is_finite:
        raise PreconditionError("saturation needs a finite ambient group")
    els = [zero(ring.ambient)] + ring.atoms
    seen = {}
    out: List[BiRelation] = []
    for e in els:
        if e.graph.basis not in seen:
            seen[e.graph.basis] = len(out)
            out.append(e)
    start = 0
    while True:
        n = len(out)
        new = []
        for i in range(n):
            for j in range(n):
                if max(i, j) < start:
                    continue
                cand = [compose(out[i], out[j])]
                if i <= j or j < start:
                    cand.append(add(out[i], out[j]))
                for x in cand:
                    if x.graph.basis not in seen:
                        seen[x.graph.basis] = len(out) + len(new)
                        new.append(x)
            if ring.kind == RingKind.PRE_RING and i >= start:
                x = neg(out[i])
                if x.graph.basis not in seen:
                    seen[x.graph.basis] = len(out) + len(new)
                    new.append(x)
        if not new:
            return out
        start = n
        out.extend(new)
        if len(out) > caps.ring_elements:
            raise EnumerationTooLarge("ring elements", caps.ring_elements)


def _check_torsion(a: Presentation, caps: Caps) -> None:
    if a.torsion_order > caps.torsion_order:
        raise EnumerationTooLarge("torsion order", caps.torsion_order, a.torsion_order)


def global_katakernel(ring: RingPresentation, caps: Optional[Caps] = None) -> Subgroup:
    """Sum of the katakernels of every ring element, as a fixpoint.

    Starting from the generators' katakernels, close under ``g[.]`` for each
    generator ``g``. Sums and composites contribute nothing new because
    ``kat(x + y) = kat x + kat y`` and ``kat(x o y) = x[kat y]``, so the
    fixpoint is exact, not a slice approximation.
    """
    caps = caps or default_caps()
    _check_torsion(ring.ambient, caps)
    k = ring.ambient.relations
    for g in ring.generators:
        k = k + g.kat
    while True:
        nxt = k
        for g in ring.generators:
            nxt = nxt + apply(g, k)
        if nxt == k:
            return k
        k = nxt


def bikatakernel(gamma: RingPresentation, delta: RingPresentation, caps: Optional[Caps] = None) -> Subgroup:
    return global_katakernel(gamma, caps) + global_katakernel(delta, caps)


def _domain_meet(rels: Sequence[BiRelation], a: Presentation) -> Subgroup:
    d = a.whole
    for x in rels:
        d = d & x.dom
    return d


def global_domain(ring: RingPresentation, word_bound: int, caps: Optional[Caps] = None) -> Tuple[Subgroup, bool]:
    """Intersection of element domains, with an exactness flag.

    Exact when every generator is total, or when the ambient group is finite
    (then the whole ring is enumerated and ``word_bound`` is not used).
    Otherwise the result is the slice's intersection and is flagged approximate.
    """
    if ring.kind != RingKind.NEAR_RING:
        raise PreconditionError("global domain is computed for near-rings")
    a = ring.ambient
    if all(g.dom == a.whole for g in ring.generators):
        return a.whole, True
    if a.is_finite:
        return _domain_meet(saturate(ring, caps), a), True
    sl = enumerate_slice(ring, word_bound, caps)
    return _domain_meet(sl.elements, a), False


def domain_stabilized(ring: RingPresentation, word_bound: int, caps: Optional[Caps] = None) -> bool:
    """Whether the slice intersection is unchanged from ``word_bound`` to one more level."""
    a = ring.ambient
    lo = _domain_meet(enumerate_slice(ring, word_bound, caps).elements, a)
    hi = _domain_meet(enumerate_slice(ring, word_bound + 1, caps).elements, a)
    return lo == hi


def max_finite_weakly_invariant(ring: RingPresentation, caps: Optional[Caps] = None) -> Subgroup:
    """Sum of all finite subgroups that are weakly invariant under the generators."""
    caps = caps or default_caps()
    a = ring.ambient
    _, subs = torsion_and_finite_lattice(a, caps)
    total = a.relations
    for s in subs:
        if s <= total:
            continue
        if invariance(s, ring.generators, Mode.WEAK).holds:
            total = total + s
    if not invariance(total, ring.generators, Mode.WEAK).holds:
        raise PreconditionError("weakly invariant finite subgroups are not closed under sums here")
    return total


def push(rel: BiRelation, q: QuotientPresentation) -> BiRelation:
    """Image of a relation's graph under the quotient map on both coordinates."""
    n = rel.n
    rows = [q.project(r[:n]) + q.project(r[n:]) for r in rel.graph.basis]
    return BiRelation(q.quotient, canonicalize(rows, pair_cover(q.quotient)))


def quotient_action(ring: RingPresentation, a0: Subgroup) -> RingPresentation:
    """The induced ring on ``A / A_0``; legal iff every generator maps ``A_0`` into itself."""
    if a0.ambient != ring.ambient:
        raise AmbientMismatch("A_0 does not belong to the ring's ambient group")
    if not a0.is_finite:
        raise PreconditionError("A_0 must be finite")
    for i, g in enumerate(ring.generators):
        v = invariance_one(a0, g, Mode.INVARIANT)
        if not v.holds:
            raise QuotientNotInvariant(i, v.witness, f"generator {i} maps {list(v.witness[0])} to {list(v.witness[1])}, outside A_0")
    q = quotient(ring.ambient, a0)
    gens = tuple(push(g, q) for g in ring.generators)
    return RingPresentation(q.quotient, gens, ring.kind, ring.identity_included, origin=q)


def inequivalence_probe(sl: EnumerationSlice) -> int:
    return len(sl.equivalence_classes)
