"""Exception hierarchy shared by every module.

Each error carries a stable ``code`` (the class name) so the CLI can emit a
machine-readable error object without a lookup table.
"""


class TotrealError(Exception):
    """Base class for domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


# exactnum
class NotMonic(TotrealError):
    pass


class NotIrreducible(TotrealError):
    pass


class NotTotallyReal(TotrealError):
    pass


class DivisionByZero(TotrealError, ZeroDivisionError):
    pass


class FieldMismatch(TotrealError):
    pass


class NotTotallyNonnegative(TotrealError):
    pass


class NotIntegral(TotrealError):
    pass


# cyclo
class OutOfRange(TotrealError):
    pass


class NotCoprime(TotrealError):
    pass


class CaseSplitViolated(TotrealError):
    """An element escaped the three-way square-class split; always an implementation bug."""


# units
class NotSquarefree(TotrealError):
    pass


# qlattice
class NotSymmetric(TotrealError):
    pass


class DiagonalNotIntegral(TotrealError):
    pass


class OffDiagonalNotHalfIntegral(TotrealError):
    pass


class NotPositiveDefinite(TotrealError):
    pass


class BudgetExceeded(TotrealError):
    pass


class ZeroVector(TotrealError):
    pass


class BoundViolated(TotrealError):
    """A lattice represented more square classes than the proven bound allows."""


# constructions
class InvalidSequence(TotrealError):
    pass


class IndexOutOfRange(TotrealError):
    pass


# padics
class NotUnit(TotrealError):
    pass


class PrimeMismatch(TotrealError):
    pass


class NonResidue(TotrealError):
    pass
