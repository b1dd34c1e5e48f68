"""Seeded random instances for the lemma suites.

Every trial draws from ``random.Random(seed * 1_000_003 + trial)`` (Python's
Mersenne Twister), so a (seed, trial) pair pins the instance regardless of
how many trials run or in what order.
"""

from __future__ import annotations

import random
from math import gcd
from typing import List, Optional, Sequence

from .fgab import FgAbGroup, Presentation, Subgroup, canonicalize
from .relations import BiRelation, Kind, add, compose, constant_to_subgroup, converse, from_matrix

FACTORS = (2, 3, 4, 6, 12)


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 1_000_003 + trial)


def random_group(rng: random.Random, max_free: int = 3, max_factors: int = 2, max_order: Optional[int] = None) -> FgAbGroup:
    while True:
        free = rng.randint(0, max_free)
        tors: List[int] = []
        k = rng.randint(0, max_factors)
        if k:
            tors.append(rng.choice(FACTORS))
            for _ in range(k - 1):
                tors.append(rng.choice([d for d in FACTORS if d % tors[-1] == 0]))
        if free + len(tors) == 0:
            continue
        g = FgAbGroup(free, tors)
        if max_order is None or g.torsion_order <= max_order:
            return g


def random_matrix(rng: random.Random, a: Presentation, bound: int = 3) -> List[List[int]]:
    """A random matrix (acting on columns) that defines a homomorphism of ``a``."""
    n = a.ncoords
    m = [[0] * n for _ in range(n)]
    for i, di in enumerate(a.moduli):
        for j, dj in enumerate(a.moduli):
            x = rng.randint(-bound, bound)
            if di == 0:
                m[i][j] = 0 if dj else x
            elif dj == 0:
                m[i][j] = x % di
            else:
                step = di // gcd(di, dj)
                m[i][j] = (x * step) % di
    return m


def random_invertible_free(rng: random.Random, a: Presentation, bound: int = 2) -> List[List[int]]:
    """Random homomorphism matrix whose free block is nonsingular."""
    r = a.free_rank
    while True:
        m = random_matrix(rng, a, bound)
        if r == 0 or _det([row[:r] for row in m[:r]]) != 0:
            return m


def _det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n))


def random_finite_subgroup(rng: random.Random, a: Presentation, max_gens: int = 2) -> Subgroup:
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        gens.append(tuple(rng.randrange(d) if d else 0 for d in a.moduli))
    return canonicalize(gens, a)


def random_endogeny(rng: random.Random, a: Presentation, p_const: float = 0.4, bound: int = 3) -> BiRelation:
    phi = from_matrix(a, random_matrix(rng, a, bound))
    if a.torsion_order > 1 and rng.random() < p_const:
        phi = add(phi, constant_to_subgroup(a, random_finite_subgroup(rng, a)))
    return phi


def random_quasi(rng: random.Random, a: Presentation, p_const: float = 0.3) -> BiRelation:
    """``phi o conv(psi)`` with ``psi`` of nonsingular free block: a quasi-endomorphism."""
    phi = random_endogeny(rng, a, p_const, bound=2)
    psi = from_matrix(a, random_invertible_free(rng, a))
    q = compose(phi, converse(psi))
    assert q.kind != Kind.NEITHER
    return q


def polynomial(rng: random.Random, base: BiRelation, one: BiRelation, degree: int = 2, bound: int = 2) -> BiRelation:
    """A random integer polynomial in ``base`` (Horner form, scalars as sums of ``one``)."""
    from .relations import neg, zero

    def scalar(c: int) -> BiRelation:
        s = zero(base.ambient)
        unit = one if c > 0 else neg(one)
        for _ in range(abs(c)):
            s = add(s, unit)
        return s

    acc = scalar(rng.randint(-bound, bound))
    for _ in range(degree):
        acc = add(compose(base, acc), scalar(rng.randint(-bound, bound)))
    return acc
