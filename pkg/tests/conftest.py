from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from endocalc.fgab import FgAbGroup
from endocalc.randinst import random_matrix
from endocalc.relations import constant_to_subgroup, add, from_matrix

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CHAINS = [(), (2,), (3,), (4,), (6,), (2, 2), (2, 4), (3, 6), (2, 6)]


@st.composite
def groups(draw, max_free: int = 2, finite: bool = False):
    free = 0 if finite else draw(st.integers(0, max_free))
    tors = draw(st.sampled_from(CHAINS[1:] if finite or free == 0 else CHAINS))
    return FgAbGroup(free, tors)


@st.composite
def elements(draw, a, bound: int = 6):
    return tuple(draw(st.integers(-bound, bound)) if d == 0 else draw(st.integers(0, d - 1)) for d in a.moduli)


@st.composite
def subgroups(draw, a, max_gens: int = 3):
    gens = draw(st.lists(elements(a), max_size=max_gens))
    return a.subgroup(gens)


@st.composite
def finite_subgroups(draw, a, max_gens: int = 2):
    gens = draw(st.lists(st.tuples(*(st.integers(0, d - 1) if d else st.just(0) for d in a.moduli)), max_size=max_gens))
    return a.subgroup(gens)


@st.composite
def endogenies(draw, a):
    import random

    m = random_matrix(random.Random(draw(st.integers(0, 10**6))), a, 3)
    phi = from_matrix(a, m)
    if a.torsion_order > 1 and draw(st.booleans()):
        phi = add(phi, constant_to_subgroup(a, draw(finite_subgroups(a))))
    return phi
