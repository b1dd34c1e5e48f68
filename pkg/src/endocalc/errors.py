"""Exception hierarchy for endocalc."""

from __future__ import annotations


class EndocalcError(Exception):
    pass


class DimensionError(EndocalcError, ValueError):
    """Coordinate vector length does not match the ambient presentation."""


class AmbientMismatch(EndocalcError, ValueError):
    pass


class PreconditionError(EndocalcError, ValueError):
    pass


class EnumerationTooLarge(EndocalcError):
    def __init__(self, what: str, cap: int, needed=None):
        self.what = what
        self.cap = cap
        self.needed = needed
        extra = f" (needs {needed})" if needed is not None else ""
        super().__init__(f"{what} exceeds enumeration cap {cap}{extra}")


class InvalidHomomorphism(EndocalcError, ValueError):
    pass


class ClassificationError(EndocalcError, ValueError):
    pass


class WitnessError(EndocalcError):
    """A failed check that carries a reproducible witness."""

    def __init__(self, message: str, witness=None, **info):
        self.witness = witness
        self.info = info
        super().__init__(message)


class IllegalRestriction(WitnessError):
    pass


class NotAProjection(WitnessError):
    def __init__(self, clause: str, message: str, witness=None):
        self.clause = clause
        super().__init__(message, witness, clause=clause)


class QuotientNotInvariant(WitnessError):
    def __init__(self, generator: int, witness, message: str):
        self.generator = generator
        super().__init__(message, witness, generator=generator)


class ParseError(EndocalcError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(f"line {ln}: {msg}" for ln, msg in self.diagnostics))


class UnknownSuite(EndocalcError, KeyError):
    def __init__(self, name: str, available):
        self.name = name
        self.available = list(available)
        super().__init__(f"unknown suite {name!r}; available: {', '.join(self.available)}")

    def __str__(self) -> str:
        return self.args[0]
