"""Exact calculus of endogenies and quasi-endomorphisms on finitely generated abelian groups."""

from __future__ import annotations

from .config import Caps, default_caps
from .errors import (
    AmbientMismatch,
    DimensionError,
    EndocalcError,
    EnumerationTooLarge,
    IllegalRestriction,
    InvalidHomomorphism,
    NotAProjection,
    ParseError,
    PreconditionError,
    QuotientNotInvariant,
    UnknownSuite,
)
from .fgab import FgAbGroup, Presentation, Subgroup, canonicalize, quotient, torsion_subgroup
from .invariance import CheckKind, Mode, commutes, flat_commutes, invariance, sharp_commutes
from .prering import RingKind, RingPresentation, bikatakernel, enumerate_slice, global_domain, global_katakernel
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
    from_pairs,
    identity,
    neg,
    preimage,
    restrict_corestrict,
    zero,
)
from .structure import decompose_lines, find_lines, ore_witness, quasi_projection, zilber_field
from .suites import emit_report, run_suite
from .workspace import Workspace, parse_workspace, serialize

__version__ = "0.1.0"
