"""Commutation and invariance predicates with reproducible witnesses."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .errors import AmbientMismatch, ClassificationError
from .fgab import Subgroup, canonicalize
from .relations import BiRelation, Kind, add, apply, compose, neg, pair_cover

Pair = Tuple[Tuple[int, ...], Tuple[int, ...]]


class CheckKind(str, Enum):
    SHARP = "SHARP"
    FLAT = "FLAT"


class Mode(str, Enum):
    INVARIANT = "INVARIANT"
    WEAK = "WEAK"
    ALMOST = "ALMOST"


@dataclass(frozen=True)
class CommutationVerdict:
    holds: bool
    witness: Optional[Pair] = None
    checked_kind: str = CheckKind.SHARP.value
    clause: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class InvarianceReport:
    mode: Mode
    holds: bool
    verdicts: List[CommutationVerdict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds

    @property
    def failing(self) -> List[int]:
        return [i for i, v in enumerate(self.verdicts) if not v.holds]


# ---------------------------------------------------------------------------
# witness search


def _witness_key(pair: Pair, moduli: Sequence[int]):
    a, b = pair
    free = sum(abs(x) for x, d in zip(a + b, moduli + moduli) if d == 0)
    return (free, sum(abs(x) for x in a + b), a, b)


def _candidates(rel: BiRelation, section: Subgroup) -> List[Pair]:
    """Small pairs of a relation's graph: basis rows and their pairwise sums/differences."""
    amb = rel.ambient
    n = amb.ncoords
    rows = [amb.reduce(r[:n]) + amb.reduce(r[n:]) for r in section.basis]
    rows = [r for r in rows if any(r)]
    out = list(rows)
    for r, s in itertools.combinations(rows, 2):
        out.append(tuple(x + y for x, y in zip(r, s)))
        out.append(tuple(x - y for x, y in zip(r, s)))
    return [(amb.reduce(r[:n]), amb.reduce(r[n:])) for r in out]


def find_violation(rel: BiRelation, section: Subgroup, bad) -> Optional[Pair]:
    """Minimal pair of ``section`` (a subgroup of the graph) whose value satisfies ``bad``."""
    hits = [p for p in _candidates(rel, section) if bad(p[1])]
    if not hits:
        return None
    moduli = rel.ambient.moduli
    return min(hits, key=lambda p: _witness_key(p, moduli))


def graph_over(rel: BiRelation, d: Subgroup) -> Subgroup:
    """``graph & (D x A)``: the pairs whose first coordinate lies in ``D``."""
    n = rel.n
    box = canonicalize(
        [tuple(r) + (0,) * n for r in d.basis] + [(0,) * n + tuple(int(i == j) for i in range(n)) for j in range(n)],
        pair_cover(rel.ambient),
    )
    return rel.graph & box


def _containment(rel: BiRelation, d: Subgroup, target: Subgroup) -> Optional[Pair]:
    """None if ``rel[D] <= target``; otherwise a witness pair."""
    if apply(rel, d) <= target:
        return None
    w = find_violation(rel, graph_over(rel, d), lambda y: not target.contains(y))
    assert w is not None, "containment failed but no generator witnesses it"
    return w


# ---------------------------------------------------------------------------
# commutation


def commutator(phi: BiRelation, psi: BiRelation) -> BiRelation:
    return add(compose(phi, psi), neg(compose(psi, phi)))


def sharp_commutes(phi: BiRelation, psi: BiRelation) -> CommutationVerdict:
    """Whether the commutator's image lies in ``kat(phi) + kat(psi)``."""
    for x in (phi, psi):
        if x.kind != Kind.ENDOGENY:
            raise ClassificationError("sharp commutation is defined for endogenies only")
    c = commutator(phi, psi)
    target = phi.kat + psi.kat
    if c.im <= target:
        return CommutationVerdict(True, None, CheckKind.SHARP.value)
    w = find_violation(c, c.graph, lambda y: not target.contains(y))
    return CommutationVerdict(False, w, CheckKind.SHARP.value, 3)


def flat_commutes(delta: BiRelation, gamma: BiRelation) -> CommutationVerdict:
    """Mutual domain preservation plus the commutator clause on the common domain.

    A failing verdict records the clause (1, 2 or 3) that broke.
    """
    for x in (delta, gamma):
        if x.kind == Kind.NEITHER:
            raise ClassificationError("flat commutation needs endogenies or quasi-endomorphisms")
    if delta.ambient != gamma.ambient:
        raise AmbientMismatch("relations on different groups")
    flat = CheckKind.FLAT.value
    common = delta.dom & gamma.dom
    w = _containment(delta, common, gamma.dom)
    if w is not None:
        return CommutationVerdict(False, w, flat, 1)
    w = _containment(gamma, common, delta.dom)
    if w is not None:
        return CommutationVerdict(False, w, flat, 2)
    w = _containment(commutator(delta, gamma), common, delta.kat + gamma.kat)
    if w is not None:
        return CommutationVerdict(False, w, flat, 3)
    return CommutationVerdict(True, None, flat)


def commutes(phi: BiRelation, psi: BiRelation, kind: CheckKind | str) -> CommutationVerdict:
    kind = CheckKind(kind)
    return sharp_commutes(phi, psi) if kind == CheckKind.SHARP else flat_commutes(phi, psi)


def commutant_membership(phi: BiRelation, gens: Sequence[BiRelation], kind: CheckKind | str) -> bool:
    return all(commutes(phi, g, kind).holds for g in gens)


# ---------------------------------------------------------------------------
# invariance


def _almost_bad(b: Subgroup):
    amb = b.ambient

    def bad(y) -> bool:
        cyc = canonicalize([y], amb)
        return cyc.rank == 1 and (cyc & b).rank == 0

    return bad


def invariance_one(b: Subgroup, gamma: BiRelation, mode: Mode | str) -> CommutationVerdict:
    mode = Mode(mode)
    if b.ambient != gamma.ambient:
        raise AmbientMismatch("subgroup and relation live on different groups")
    img = apply(gamma, b)
    if mode == Mode.INVARIANT:
        target = b
    elif mode == Mode.WEAK:
        target = b + gamma.kat
    else:
        meet = img & b
        if meet.rank == img.rank:
            return CommutationVerdict(True, None, mode.value)
        w = find_violation(gamma, graph_over(gamma, b), _almost_bad(b))
        assert w is not None
        return CommutationVerdict(False, w, mode.value)
    if img <= target:
        return CommutationVerdict(True, None, mode.value)
    w = find_violation(gamma, graph_over(gamma, b), lambda y: not target.contains(y))
    return CommutationVerdict(False, w, mode.value)


def invariance(b: Subgroup, gens: Sequence[BiRelation], mode: Mode | str) -> InvarianceReport:
    """Check ``B`` against each generator.

    INVARIANT: ``g[B] <= B``. WEAK: ``g[B] <= B + kat(g)``. ALMOST:
    ``g[B] & B`` has finite index in ``g[B]``.
    """
    mode = Mode(mode)
    verdicts = [invariance_one(b, g, mode) for g in gens]
    return InvarianceReport(mode, all(v.holds for v in verdicts), verdicts)
