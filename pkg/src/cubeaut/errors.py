"""Exception types shared across the package.

Validation errors carry a witness (the offending triple, element, ...)
so failures point at concrete table entries rather than just a message.
"""

from __future__ import annotations


class CubeautError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------------------
# Cayley-table / group construction


class GroupTableError(CubeautError):
    """A candidate multiplication table violates a group axiom."""


class NotClosed(GroupTableError):
    def __init__(self, row: int, col: int, value):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"table entry at ({row}, {col}) is {value!r}, not an index in range")


class NoIdentity(GroupTableError):
    pass


class NotAssociative(GroupTableError):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(f"(a*b)*c != a*(b*c) for witness triple ({a}, {b}, {c})")


class NoInverse(GroupTableError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotLatin(GroupTableError):
    def __init__(self, kind: str, index: int):
        self.kind, self.index = kind, index
        super().__init__(f"{kind} {index} is not a permutation of 0..n-1")


class UnsupportedParameter(CubeautError):
    """Builder called with a parameter outside its supported range."""


class CapExceeded(CubeautError):
    """A closure or enumeration grew past the caller-supplied cap."""

    def __init__(self, message: str, found: int):
        self.found = found
        super().__init__(f"{message} (found {found} so far)")


class BudgetExceeded(CubeautError):
    """A search exhausted its node budget before proving optimality."""

    def __init__(self, message: str, best: int):
        self.best = best
        super().__init__(f"{message} (best bound so far: {best})")


# ---------------------------------------------------------------------------
# Subgroup / quotient structure


class NotASubgroup(CubeautError):
    pass


class NotNormal(CubeautError):
    pass


# ---------------------------------------------------------------------------
# Maps between groups


class NotAutomorphism(CubeautError):
    """Map fails bijectivity or the homomorphism law; carries a witness pair."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message}; witness {witness}")


class NotInvariant(CubeautError):
    """Subgroup is not mapped onto itself by the given map."""


# ---------------------------------------------------------------------------
# Cubing-automorphism constructors


class NotAbelian(CubeautError):
    pass


class OrderDivisibleBy3(CubeautError):
    pass


class BadIndex(CubeautError):
    pass


class KNotAbelian(CubeautError):
    pass


class SylowCondition(CubeautError):
    pass


class XInK(CubeautError):
    pass


class NotClass2(CubeautError):
    pass


class BadDecomposition(CubeautError):
    pass


class PreconditionViolated(CubeautError):
    """A documented precondition failed; names the condition and a witness."""

    def __init__(self, condition: str, witness=None):
        self.condition = condition
        self.witness = witness
        msg = condition if witness is None else f"{condition}; witness {witness}"
        super().__init__(msg)


class HypothesisNotMet(CubeautError):
    """A check's ambient hypothesis fails, so the check is skipped."""


# ---------------------------------------------------------------------------
# File ingestion


class FileFormatError(CubeautError):
    """Rejected input file; message carries the JSON path of the violation."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")
