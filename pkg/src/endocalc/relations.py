"""Bi-relations on a finitely generated abelian group.

A bi-relation is a subgroup of ``A x A`` stored as a canonical lattice in the
doubled cover. Endogenies (total, finite katakernel) and quasi-endomorphisms
(finite-index domain, finite katakernel) are classified from the graph; the
graph is the only source of truth and every derived subgroup is computed from
it by lattice elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from . import lattice as lat
from .errors import AmbientMismatch, ClassificationError, IllegalRestriction, InvalidHomomorphism, PreconditionError
from .fgab import INFINITE, Presentation, Subgroup, SubgroupPresentation, canonicalize
from .lattice import Vector


class Kind(str, Enum):
    ENDOGENY = "ENDOGENY"
    QUASI_ENDO = "QUASI_ENDO"
    NEITHER = "NEITHER"


@lru_cache(maxsize=None)
def pair_cover(a: Presentation) -> Presentation:
    return Presentation(a.moduli + a.moduli)


@dataclass(frozen=True)
class RelationClass:
    kind: Kind
    kat: Subgroup
    dom: Subgroup
    im: Subgroup
    ker: Subgroup
    dom_index: object


@dataclass(frozen=True)
class BiRelation:
    ambient: Presentation
    graph: Subgroup

    def __post_init__(self):
        if self.graph.ambient != pair_cover(self.ambient):
            raise AmbientMismatch("graph does not live in A x A")

    def __repr__(self) -> str:
        return f"BiRelation({self.ambient!s}, pairs={self.pairs()})"

    @property
    def n(self) -> int:
        return self.ambient.ncoords

    def pairs(self) -> List[List[List[int]]]:
        """Generator pairs ``[a, b]`` spanning the graph (relations omitted)."""
        n = self.n
        return [[list(g[:n]), list(g[n:])] for g in self.graph.generators()]

    def __contains__(self, pair) -> bool:
        a, b = pair
        return self.graph.contains(tuple(a) + tuple(b))

    # -- anatomy -----------------------------------------------------------
    @cached_property
    def kat(self) -> Subgroup:
        return apply(self, self.ambient.relations)

    @cached_property
    def dom(self) -> Subgroup:
        return canonicalize([r[: self.n] for r in self.graph.basis], self.ambient)

    @cached_property
    def im(self) -> Subgroup:
        return canonicalize([r[self.n:] for r in self.graph.basis], self.ambient)

    @cached_property
    def ker(self) -> Subgroup:
        return preimage(self, self.ambient.relations)

    @cached_property
    def kind(self) -> Kind:
        if not self.kat.is_finite:
            return Kind.NEITHER
        if self.dom.index == 1:
            return Kind.ENDOGENY
        if self.dom.index != INFINITE:
            return Kind.QUASI_ENDO
        return Kind.NEITHER

    def _value(self, a: Sequence[int]) -> Optional[Vector]:
        """One element of the coset assigned to ``a``, or None off the domain."""
        n = self.n
        w = lat.reduce_vector(self.graph.basis, tuple(a) + (0,) * n)
        if any(w[:n]):
            return None
        return self.ambient.reduce([-x for x in w[n:]])

    # operator sugar
    def __add__(self, other: "BiRelation") -> "BiRelation":
        return add(self, other)

    def __neg__(self) -> "BiRelation":
        return neg(self)

    def __sub__(self, other: "BiRelation") -> "BiRelation":
        return add(self, neg(other))

    def __matmul__(self, other: "BiRelation") -> "BiRelation":
        return compose(self, other)


def classify(phi: BiRelation) -> RelationClass:
    return RelationClass(phi.kind, phi.kat, phi.dom, phi.im, phi.ker, phi.dom.index)


def _same(phi: BiRelation, psi: BiRelation) -> None:
    if phi.ambient != psi.ambient:
        raise AmbientMismatch(f"relations on {phi.ambient} and {psi.ambient}")


def _make(a: Presentation, rows: Iterable[Sequence[int]]) -> BiRelation:
    return BiRelation(a, canonicalize(rows, pair_cover(a)))


# ---------------------------------------------------------------------------
# constructors


def from_pairs(a: Presentation, pairs: Iterable[Tuple[Sequence[int], Sequence[int]]]) -> BiRelation:
    rows = []
    for x, y in pairs:
        a.check(x)
        a.check(y)
        rows.append(tuple(x) + tuple(y))
    return _make(a, rows)


def from_matrix(a: Presentation, m: Sequence[Sequence[int]]) -> BiRelation:
    """Graph of ``x -> M x`` (``M`` acts on column vectors)."""
    n = a.ncoords
    if len(m) != n or any(len(row) != n for row in m):
        raise InvalidHomomorphism(f"matrix must be {n}x{n} for {a}")
    rel = a.relations
    for r in a.relation_rows:
        image = lat.mat_vec(m, r)
        if not rel.contains(image):
            raise InvalidHomomorphism(
                f"matrix sends the relation {list(r)} to {list(image)}, which is not zero in {a}"
            )
    cols = list(zip(*m))
    rows = [tuple(int(i == j) for i in range(n)) + tuple(cols[j]) for j in range(n)]
    return _make(a, rows)


def identity(a: Presentation) -> BiRelation:
    n = a.ncoords
    return from_matrix(a, lat.identity(n))


def zero(a: Presentation) -> BiRelation:
    n = a.ncoords
    return from_matrix(a, [[0] * n for _ in range(n)])


def constant_to_subgroup(a: Presentation, b: Subgroup) -> BiRelation:
    """The endogeny ``A x B``: every element is sent to the finite subgroup ``B``."""
    if b.ambient != a:
        raise AmbientMismatch("subgroup does not belong to the ambient group")
    if not b.is_finite:
        raise PreconditionError("constant endogeny needs a finite subgroup (its katakernel)")
    n = a.ncoords
    rows = [tuple(int(i == j) for i in range(n)) + (0,) * n for j in range(n)]
    rows += [(0,) * n + tuple(g) for g in b.basis]
    return _make(a, rows)


def converse(phi: BiRelation) -> BiRelation:
    n = phi.n
    return _make(phi.ambient, [r[n:] + r[:n] for r in phi.graph.basis])


# ---------------------------------------------------------------------------
# arithmetic


def neg(phi: BiRelation) -> BiRelation:
    n = phi.n
    return _make(phi.ambient, [r[:n] + tuple(-x for x in r[n:]) for r in phi.graph.basis])


def add(phi: BiRelation, psi: BiRelation) -> BiRelation:
    """Fibre sum ``{(a, b1 + b2) : (a, b1) in phi, (a, b2) in psi}``."""
    _same(phi, psi)
    n = phi.n
    zeros = (0,) * n
    rows = [r[:n] + r[:n] + r[n:] for r in phi.graph.basis]
    rows += [tuple(-x for x in r[:n]) + zeros + r[n:] for r in psi.graph.basis]
    return _make(phi.ambient, lat.eliminate(rows, 3 * n, n))


def compose(phi: BiRelation, psi: BiRelation) -> BiRelation:
    """``phi o psi = {(a, c) : exists z, (a, z) in psi and (z, c) in phi}``."""
    _same(phi, psi)
    n = phi.n
    zeros = (0,) * n
    rows = [r[n:] + r[:n] + zeros for r in psi.graph.basis]
    rows += [tuple(-x for x in r[:n]) + zeros + r[n:] for r in phi.graph.basis]
    return _make(phi.ambient, lat.eliminate(rows, 3 * n, n))


def apply(phi: BiRelation, b: Subgroup) -> Subgroup:
    """``phi[B]``: every value ``phi`` takes on ``B`` (on ``B & Dom(phi)``)."""
    if b.ambient != phi.ambient:
        raise AmbientMismatch("subgroup and relation live on different groups")
    n = phi.n
    rows = list(phi.graph.basis) + [tuple(-x for x in r) + (0,) * n for r in b.basis]
    return Subgroup(phi.ambient, lat.eliminate(rows, 2 * n, n))


def preimage(phi: BiRelation, b: Subgroup) -> Subgroup:
    """``{a : phi[a] <= B + kat(phi)}``, i.e. the first projection of ``phi & (A x (B + kat))``."""
    if b.ambient != phi.ambient:
        raise AmbientMismatch("subgroup and relation live on different groups")
    n = phi.n
    # values are cosets of kat, so meeting B alone already captures B + kat
    rows = [r[n:] + r[:n] for r in phi.graph.basis] + [tuple(-x for x in r) + (0,) * n for r in b.basis]
    return Subgroup(phi.ambient, lat.eliminate(rows, 2 * n, n))


def equivalent(phi: BiRelation, psi: BiRelation) -> bool:
    """Whether the difference has finite image on the common domain."""
    for x in (phi, psi):
        if x.kind == Kind.NEITHER:
            raise ClassificationError("equivalence is only defined for endogenies and quasi-endomorphisms")
    return add(phi, neg(psi)).im.is_finite


def restrict_graph(phi: BiRelation, b: Subgroup) -> BiRelation:
    """``phi & (B x B)`` kept inside ``A x A``."""
    n = phi.n
    bb = canonicalize(
        [tuple(r) + (0,) * n for r in b.basis] + [(0,) * n + tuple(r) for r in b.basis],
        pair_cover(phi.ambient),
    )
    return BiRelation(phi.ambient, phi.graph & bb)


def transport(phi: BiRelation, pres: SubgroupPresentation) -> BiRelation:
    """Re-express a relation whose graph lies in ``B x B`` on the abstract group ``B``."""
    n = phi.n
    rows = []
    for r in phi.graph.basis:
        rows.append(pres.from_ambient(phi.ambient.reduce(r[:n])) + pres.from_ambient(phi.ambient.reduce(r[n:])))
    return _make(pres.group, rows)


def restrict_corestrict(phi: BiRelation, b: Subgroup, check: bool = True):
    """Restriction-corestriction of ``phi`` to ``B``, presented on ``B`` itself.

    Returns ``(relation_on_B, presentation_of_B)``. With ``check`` the legality
    condition is enforced first: weak invariance for endogenies, almost
    invariance for quasi-endomorphisms.
    """
    from .invariance import Mode, invariance

    if b.ambient != phi.ambient:
        raise AmbientMismatch("subgroup and relation live on different groups")
    if check:
        kind = phi.kind
        if kind == Kind.NEITHER:
            raise ClassificationError("cannot restrict a relation that is neither endogeny nor quasi-endomorphism")
        mode = Mode.WEAK if kind == Kind.ENDOGENY else Mode.ALMOST
        report = invariance(b, [phi], mode)
        if not report.holds:
            raise IllegalRestriction(
                f"subgroup fails {mode.value} invariance under the relation",
                report.verdicts[0].witness,
            )
    pres = b.present()
    return transport(restrict_graph(phi, b), pres), pres
