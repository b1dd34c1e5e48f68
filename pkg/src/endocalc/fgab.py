"""Finitely generated abelian groups and their subgroups.

A group is presented on a cover ``Z^n``: coordinate ``i`` has modulus
``moduli[i]`` (0 for a free coordinate). A subgroup is stored as the HNF of
its preimage lattice in the cover, which always contains the relation
lattice, so equal subgroups have identical bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import inf, prod
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from . import lattice as lat
from .config import Caps, default_caps
from .errors import AmbientMismatch, DimensionError, EnumerationTooLarge, PreconditionError
from .lattice import Basis, Vector

INFINITE = inf


@dataclass(frozen=True)
class Presentation:
    """Cover presentation: one modulus per coordinate, 0 meaning free."""

    moduli: Tuple[int, ...]

    @property
    def ncoords(self) -> int:
        return len(self.moduli)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.moduli if d == 0)

    @cached_property
    def relation_rows(self) -> Basis:
        n = self.ncoords
        return tuple(
            tuple(d if j == i else 0 for j in range(n)) for i, d in enumerate(self.moduli) if d
        )

    @cached_property
    def relations(self) -> "Subgroup":
        return Subgroup(self, lat.hnf(self.relation_rows, self.ncoords))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, lat.hnf(lat.identity(self.ncoords), self.ncoords))

    @property
    def torsion_order(self) -> int:
        return prod(d for d in self.moduli if d)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def check(self, v: Sequence[int]) -> None:
        if len(v) != self.ncoords:
            raise DimensionError(f"element of length {len(v)} for a group with {self.ncoords} coordinates")

    def reduce(self, v: Sequence[int]) -> Vector:
        self.check(v)
        return tuple(a % d if d else a for a, d in zip(v, self.moduli))

    def zero(self) -> Vector:
        return (0,) * self.ncoords

    def subgroup(self, gens: Iterable[Sequence[int]] = ()) -> "Subgroup":
        return canonicalize(gens, self)

    def torsion_elements(self) -> Iterator[Vector]:
        """Elements of the torsion subgroup in lexicographic coordinate order."""
        ranges = [range(d) if d else range(1) for d in self.moduli]
        return (tuple(v) for v in itertools.product(*ranges))


class FgAbGroup(Presentation):
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ... | d_k``."""

    def __init__(self, free_rank: int = 0, torsion: Sequence[int] = ()):
        torsion = tuple(int(d) for d in torsion)
        if free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d < 2 for d in torsion):
            raise ValueError(f"torsion factors must be >= 2, got {list(torsion)}")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValueError(f"torsion factors {list(torsion)} are not a divisibility chain")
        object.__setattr__(self, "moduli", (0,) * free_rank + torsion)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return self.moduli[self.free_rank:]

    def __repr__(self) -> str:
        return f"FgAbGroup(free_rank={self.free_rank}, torsion={list(self.torsion)})"

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def __reduce__(self):
        return (FgAbGroup, (self.free_rank, self.torsion))


@dataclass(frozen=True)
class Subgroup:
    ambient: Presentation
    basis: Basis

    def __repr__(self) -> str:
        return f"Subgroup({self.ambient!s}, gens={[list(g) for g in self.generators()]})"

    # -- derived data ------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.basis) - len(self.ambient.relation_rows)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def index(self):
        """``|ambient : self|`` or ``INFINITE``."""
        idx = lat.lattice_index(self.basis, self.ambient.ncoords)
        return INFINITE if idx is None else idx

    @property
    def order(self):
        if not self.is_finite:
            return INFINITE
        # finite subgroups live in the torsion block of the cover
        return self.ambient.torsion_order // prod(
            row[c] for row, c in zip(self.basis, lat.pivot_columns(self.basis))
        )

    def generators(self) -> List[Vector]:
        """Reduced nonzero generators (relation rows dropped)."""
        out = []
        for row in self.basis:
            v = self.ambient.reduce(row)
            if any(v) and v not in out:
                out.append(v)
        return out

    def contains(self, v: Sequence[int]) -> bool:
        self.ambient.check(v)
        return lat.contains(self.basis, v)

    __contains__ = contains

    def elements(self) -> List[Vector]:
        if not self.is_finite:
            raise PreconditionError("cannot list the elements of an infinite subgroup")
        return [v for v in self.ambient.torsion_elements() if lat.contains(self.basis, v)]

    # -- lattice operations ------------------------------------------------
    def _same(self, other: "Subgroup") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"subgroups of {self.ambient} and {other.ambient}")

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return subgroup_sum(self, other)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return subgroup_intersect(self, other)

    def __le__(self, other: "Subgroup") -> bool:
        self._same(other)
        return all(lat.contains(other.basis, row) for row in self.basis)

    def __ge__(self, other: "Subgroup") -> bool:
        return other <= self

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self != other

    def present(self) -> "SubgroupPresentation":
        """This subgroup as an abstract group, with the inclusion recorded."""
        group, lift, coords = _present(self.basis, self.ambient.relation_rows, self.ambient.ncoords)
        return SubgroupPresentation(self, group, lift, coords)


# ---------------------------------------------------------------------------
# core operations


def canonicalize(gens: Iterable[Sequence[int]], ambient: Presentation) -> Subgroup:
    """Subgroup generated by ``gens`` (the columns of a generator matrix)."""
    rows = []
    for g in gens:
        ambient.check(g)
        rows.append(tuple(g))
    rows.extend(ambient.relation_rows)
    return Subgroup(ambient, lat.hnf(rows, ambient.ncoords))


def subgroup_sum(b1: Subgroup, b2: Subgroup) -> Subgroup:
    b1._same(b2)
    return Subgroup(b1.ambient, lat.hnf(b1.basis + b2.basis, b1.ambient.ncoords))


def subgroup_intersect(b1: Subgroup, b2: Subgroup) -> Subgroup:
    b1._same(b2)
    n = b1.ambient.ncoords
    rows = [r + r for r in b1.basis] + [tuple(-a for a in r) + (0,) * n for r in b2.basis]
    return Subgroup(b1.ambient, lat.eliminate(rows, 2 * n, n))


def rank_and_index(b: Subgroup):
    return b.rank, b.index


def torsion_subgroup(a: Presentation) -> Subgroup:
    n = a.ncoords
    return canonicalize(
        [tuple(int(j == i) for j in range(n)) for i, d in enumerate(a.moduli) if d], a
    )


def torsion_and_finite_lattice(a: Presentation, caps: Optional[Caps] = None):
    """Torsion subgroup ``T`` and every subgroup of ``T``, each listed once.

    Subgroups are built as sums of cyclic subgroups, ordered by discovery
    (the trivial subgroup first).
    """
    caps = caps or default_caps()
    t = torsion_subgroup(a)
    if a.torsion_order > caps.torsion_order:
        raise EnumerationTooLarge("torsion order", caps.torsion_order, a.torsion_order)
    cyclic: List[Subgroup] = []
    seen_cyclic = set()
    for v in a.torsion_elements():
        c = canonicalize([v], a)
        if c.basis not in seen_cyclic:
            seen_cyclic.add(c.basis)
            cyclic.append(c)
    zero = a.relations
    found = {zero.basis: zero}
    order = [zero]
    frontier = [zero]
    while frontier:
        nxt = []
        for s in frontier:
            for c in cyclic:
                u = subgroup_sum(s, c)
                if u.basis not in found:
                    found[u.basis] = u
                    order.append(u)
                    nxt.append(u)
                    if len(order) > caps.subgroup_count:
                        raise EnumerationTooLarge("subgroup count", caps.subgroup_count)
        frontier = nxt
    return t, order


def relative_index(b: Subgroup, c: Subgroup):
    """``|C : B|`` for ``B <= C`` (``INFINITE`` when ranks differ)."""
    if not b <= c:
        raise PreconditionError("the first subgroup must lie inside the second")
    if b.rank != c.rank:
        return INFINITE
    return c.present().image(b).index


def finite_perturbation_rank_check(b1: Subgroup, b2: Subgroup, c: Subgroup) -> bool:
    """Whether ``rank((B1+C) & (B2+C)) == rank(B1 & B2)`` for a finite ``C``."""
    if not c.is_finite:
        raise PreconditionError("the perturbing subgroup C must be finite")
    return ((b1 + c) & (b2 + c)).rank == (b1 & b2).rank


# ---------------------------------------------------------------------------
# presentations of subquotients


def _present(top: Basis, bottom: Sequence[Sequence[int]], ncols: int):
    """Present ``top / bottom`` (``bottom`` inside ``top``) in invariant-factor form.

    Returns ``(group, lift, to_coords)``: ``lift[i]`` is a cover vector for
    the ``i``-th group coordinate, and ``to_coords(x)`` maps a cover vector
    of ``top`` to reduced group coordinates.
    """
    m = len(top)
    rel = [lat.solve_coordinates(top, b) for b in bottom]
    diag, v, vi = lat.smith_columns(rel, m)
    free_pos = [i for i, d in enumerate(diag) if d == 0]
    tor_pos = [i for i, d in enumerate(diag) if d > 1]
    group = FgAbGroup(len(free_pos), [diag[i] for i in tor_pos])
    pos = free_pos + tor_pos
    lift = [lat.vec_mat(vi[i], top) for i in pos]
    vsel = [[row[i] for i in pos] for row in v]

    def to_coords(x: Sequence[int]) -> Vector:
        y = lat.solve_coordinates(top, x)
        return group.reduce(lat.vec_mat(y, vsel)) if pos else ()

    to_coords.matrix = vsel
    return group, lift, to_coords


@dataclass(frozen=True)
class SubgroupPresentation:
    subgroup: Subgroup
    group: FgAbGroup
    lift: List[Vector] = field(repr=False)
    _to_coords: object = field(repr=False, compare=False)

    def to_ambient(self, g: Sequence[int]) -> Vector:
        """Image in the ambient group of an element given in ``group`` coordinates."""
        self.group.check(g)
        n = self.subgroup.ambient.ncoords
        out = [0] * n
        for a, row in zip(g, self.lift):
            for j in range(n):
                out[j] += a * row[j]
        return self.subgroup.ambient.reduce(out)

    def from_ambient(self, x: Sequence[int]) -> Vector:
        if not self.subgroup.contains(x):
            raise PreconditionError(f"{list(x)} is not in the subgroup")
        return self._to_coords(x)

    def image(self, b: Subgroup) -> Subgroup:
        """A subgroup of ``group`` given by its ambient image ``b`` (must lie inside)."""
        if not b <= self.subgroup:
            raise PreconditionError("subgroup is not contained in the presented subgroup")
        return canonicalize([self._to_coords(r) for r in b.basis], self.group)

    def embed(self, b: Subgroup) -> Subgroup:
        return canonicalize([self.to_ambient(g) for g in b.generators()], self.subgroup.ambient)


@dataclass(frozen=True)
class QuotientPresentation:
    source: Presentation
    kernel: Subgroup
    quotient: FgAbGroup
    projection_data: Tuple[Vector, ...]  # rows: quotient coordinates as functionals on the cover
    lift_data: Tuple[Vector, ...] = field(repr=False)

    def project(self, v: Sequence[int]) -> Vector:
        self.source.check(v)
        return self.quotient.reduce(lat.mat_vec(self.projection_data, v)) if self.projection_data else ()

    def lift(self, q: Sequence[int]) -> Vector:
        self.quotient.check(q)
        n = self.source.ncoords
        out = [0] * n
        for a, row in zip(q, self.lift_data):
            for j in range(n):
                out[j] += a * row[j]
        return self.source.reduce(out)

    def project_subgroup(self, b: Subgroup) -> Subgroup:
        return canonicalize([self.project(r) for r in b.basis], self.quotient)

    def preimage_subgroup(self, q: Subgroup) -> Subgroup:
        return canonicalize([self.lift(g) for g in q.generators()], self.source) + self.kernel


def quotient(a: Presentation, b: Subgroup) -> QuotientPresentation:
    if b.ambient != a:
        raise AmbientMismatch("subgroup does not belong to the given group")
    n = a.ncoords
    top = lat.hnf(lat.identity(n), n)
    group, lift, to_coords = _present(top, b.basis, n)
    vsel = to_coords.matrix
    proj = tuple(tuple(vsel[j][i] for j in range(n)) for i in range(group.ncoords))
    return QuotientPresentation(a, b, group, proj, tuple(lift))


@dataclass(frozen=True)
class Product:
    group: FgAbGroup
    cover: Presentation
    embed1: Tuple[Vector, ...]
    embed2: Tuple[Vector, ...]
    project1: Tuple[Vector, ...]
    project2: Tuple[Vector, ...]


def product_and_projections(a: Presentation, b: Presentation) -> Product:
    """``A x B`` in invariant-factor form with embeddings and projections.

    All maps are integer matrices acting on column vectors.
    """
    cover = Presentation(a.moduli + b.moduli)
    n1, n2 = a.ncoords, b.ncoords
    n = n1 + n2
    q = quotient(Presentation((0,) * n), canonicalize(cover.relation_rows, Presentation((0,) * n)))
    group = q.quotient

    def col(v):
        return q.project(v)

    e1 = [col(tuple(int(j == i) for j in range(n))) for i in range(n1)]
    e2 = [col(tuple(int(j == n1 + i) for j in range(n))) for i in range(n2)]
    embed1 = tuple(zip(*e1)) if e1 and group.ncoords else ()
    embed2 = tuple(zip(*e2)) if e2 and group.ncoords else ()
    lifts = [q.lift_data[i] for i in range(group.ncoords)]
    project1 = tuple(tuple(l[j] for l in lifts) for j in range(n1))
    project2 = tuple(tuple(l[n1 + j] for l in lifts) for j in range(n2))
    return Product(group, cover, embed1, embed2, project1, project2)
