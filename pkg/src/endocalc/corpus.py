"""Stored counterexamples and curated instances replayed by the suites."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Tuple

from .fgab import FgAbGroup
from .prering import RingKind, RingPresentation
from .relations import BiRelation, add, constant_to_subgroup, from_matrix, from_pairs, identity
from .fgab import torsion_subgroup


def _diag(*xs: int) -> List[List[int]]:
    return [[x if i == j else 0 for j in range(len(xs))] for i, x in enumerate(xs)]


# ---------------------------------------------------------------------------
# counterexamples


def right_distributivity_counterexample() -> Tuple[BiRelation, BiRelation, BiRelation]:
    """``(phi, psi, delta)`` on Z/2 with ``(phi + psi) delta != phi delta + psi delta``.

    ``delta`` sends everything to Z/2 and ``phi = psi = 1``: the left side is
    the zero map, the right side is the constant relation onto Z/2.
    """
    a = FgAbGroup(0, [2])
    one = identity(a)
    delta = constant_to_subgroup(a, a.whole)
    return one, one, delta


def nearring_distributivity_counterexample() -> Tuple[BiRelation, BiRelation, BiRelation]:
    """``(psi, phi, gamma)`` on Z with ``psi (phi + gamma) != psi phi + psi gamma``.

    ``psi`` is halving, ``phi = 1``, ``gamma = -1``: the left side is the zero
    map on all of Z, the right side is the zero map on 2Z only. Here
    ``kat(phi) <= Dom(psi)`` holds, so the graphs still agree on the common
    domain even though the domains differ.
    """
    z = FgAbGroup(1)
    half = from_pairs(z, [((2,), (1,))])
    return half, identity(z), from_matrix(z, [[-1]])


def flat_clause1_counterexample() -> Tuple[BiRelation, BiRelation]:
    """``(delta, gamma)`` on Z + Z/2 failing the first flat-commutation clause.

    ``delta`` halves on 2Z + Z/2; ``gamma = (n, t) -> (n, t + n)`` moves the
    torsion coordinate, so ``delta`` sends ``(2, 0)`` (common domain) to
    ``(1, 0)``, outside ``Dom(gamma)``.
    """
    a = FgAbGroup(1, [2])
    delta = from_pairs(a, [((2, 0), (1, 0)), ((0, 1), (0, 1))])
    gamma = from_pairs(a, [((2, 1), (2, 1)), ((2, 0), (2, 0)), ((0, 1), (0, 1))])
    return delta, gamma


def quotient_counterexample() -> Tuple[RingPresentation, object]:
    """Doubling plus a constant onto Z/4 on Z + Z/4; ``A_0 = <(0, 2)>`` is not invariant."""
    a = FgAbGroup(1, [4])
    dbl = from_matrix(a, [[2, 0], [0, 1]])
    const = constant_to_subgroup(a, torsion_subgroup(a))
    ring = RingPresentation(a, [dbl, const])
    return ring, a.subgroup([(0, 2)])


def quotient_homomorphism_counterexample():
    """``(x, y, A_0)`` on Z + Z/2 where pushing to ``A / A_0`` does not commute with composition.

    ``y`` doubles the free coordinate and kills the torsion, ``x`` sends
    ``(2, 1)`` to ``(1, 0)`` (domain of index 4). ``A_0 = 0 + Z/2`` is invariant
    under both, yet the pushed composite is the identity on 2Z while the
    composite of the pushes is the identity on Z. The two are equivalent.
    """
    a = FgAbGroup(1, [2])
    x = from_pairs(a, [((2, 1), (1, 0))])
    y = from_pairs(a, [((1, 0), (2, 0)), ((0, 1), (0, 0))])
    return x, y, a.subgroup([(0, 1)])


# ---------------------------------------------------------------------------
# curated decompositions


@dataclass(frozen=True)
class DecompositionInstance:
    name: str
    gamma: RingPresentation
    delta: RingPresentation
    bound: int


def _ring(a, mats, identity_included=True) -> RingPresentation:
    return RingPresentation(a, [m if isinstance(m, BiRelation) else from_matrix(a, m) for m in mats], RingKind.PRE_RING, identity_included)


def _block(x: List[List[int]], k: int = 2) -> List[List[int]]:
    """Kronecker product ``x (x) I_k``."""
    n = len(x)
    return [[x[i // k][j // k] if i % k == j % k else 0 for j in range(n * k)] for i in range(n * k)]


def _pad(m: List[List[int]], extra: int) -> List[List[int]]:
    """Extend a matrix by an identity block on ``extra`` trailing coordinates."""
    n = len(m)
    out = [row + [0] * extra for row in m]
    out += [[0] * n + [int(i == j) for j in range(extra)] for i in range(extra)]
    return out


def decomposition_instances() -> List[DecompositionInstance]:
    out: List[DecompositionInstance] = []
    z1, z2, z3, z4 = FgAbGroup(1), FgAbGroup(2), FgAbGroup(3), FgAbGroup(4)
    e11, e22, swap = [[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [1, 0]]
    out.append(DecompositionInstance("Z2-coordinates", _ring(z2, [e11, e22, swap]), _ring(z2, [_diag(2, 2)]), 2))
    out.append(DecompositionInstance("Z-identity", _ring(z1, []), _ring(z1, [[[3]]]), 1))
    out.append(DecompositionInstance("Z2-diagonal", _ring(z2, [e11, e22]), _ring(z2, [_diag(2, 3)]), 2))
    out.append(DecompositionInstance("Z2-oblique-idempotent", _ring(z2, [[[1, 1], [0, 0]]]), _ring(z2, [_diag(5, 5)]), 2))
    out.append(DecompositionInstance("Z3-coordinates", _ring(z3, [_diag(1, 0, 0), _diag(0, 1, 0), _diag(0, 0, 1)], False), _ring(z3, [_diag(2, 2, 2)]), 2))
    rot = [[0, -1], [1, 0]]
    blk_proj, blk_swap = _block(e11), _block(swap)
    rot2 = [[rot[i % 2][j % 2] if i // 2 == j // 2 else 0 for j in range(4)] for i in range(4)]
    out.append(DecompositionInstance("Z4-blocks", _ring(z4, [blk_proj, blk_swap]), _ring(z4, [_diag(2, 2, 2, 2)]), 2))
    out.append(DecompositionInstance("Z4-blocks-rotation", _ring(z4, [blk_proj, blk_swap]), _ring(z4, [rot2]), 2))
    # torsion-augmented variants
    t2 = FgAbGroup(2, [2])
    const_t = constant_to_subgroup(t2, torsion_subgroup(t2))
    out.append(DecompositionInstance(
        "Z2+Z/2-coordinates",
        _ring(t2, [_pad(e11, 1), _pad(e22, 1), _pad(swap, 1)]),
        _ring(t2, [_diag(3, 3, 1)]), 2))
    out.append(DecompositionInstance(
        "Z2+Z/2-constant-kat",
        _ring(t2, [add(from_matrix(t2, _diag(1, 0, 0)), const_t), from_matrix(t2, _diag(0, 1, 0))]),
        _ring(t2, [_diag(3, 3, 1)]), 2))
    t1 = FgAbGroup(1, [4])
    out.append(DecompositionInstance("Z+Z/4-identity", _ring(t1, [constant_to_subgroup(t1, torsion_subgroup(t1))]), _ring(t1, [_diag(3, 1)]), 1))
    t4 = FgAbGroup(4, [3])
    out.append(DecompositionInstance("Z4+Z/3-blocks", _ring(t4, [_pad(blk_proj, 1), _pad(blk_swap, 1)]), _ring(t4, [_pad(_diag(2, 2, 2, 2), 1)]), 2))
    return out


# ---------------------------------------------------------------------------
# finite fields and Ore instances


def field_instances():
    """``(name, group, generators, expected)`` where expected is an order or a failure reason."""
    f4 = FgAbGroup(0, [2, 2])
    f25 = FgAbGroup(0, [5, 5])
    z4 = FgAbGroup(0, [4])
    return [
        ("F4", f4, [from_matrix(f4, [[0, 1], [1, 1]])], 4),
        # companion matrix of x^2 + x + 2, primitive over F_5
        ("F25", f25, [from_matrix(f25, [[0, 3], [1, 4]])], 25),
        ("Z/4-not-minimal", z4, [from_matrix(z4, [[3]])], "not G-minimal"),
    ]


def ore_instances():
    """``(name, ring, bound)`` for commutative rings acting by monomorphisms."""
    z = FgAbGroup(1)
    z2 = FgAbGroup(2)
    f4 = FgAbGroup(0, [2, 2])
    return [
        ("Z-scalars-2-3", RingPresentation(z, [from_matrix(z, [[2]]), from_matrix(z, [[3]])]), 2),
        ("Z2-gaussian", RingPresentation(z2, [from_matrix(z2, [[0, -1], [1, 0]])]), 2),
        ("Z2-diagonal-scalars", RingPresentation(z2, [from_matrix(z2, [[2, 0], [0, 2]])]), 2),
        ("F4", RingPresentation(f4, [from_matrix(f4, [[0, 1], [1, 1]])]), 2),
    ]
