"""Exception hierarchy shared by every layer of the package."""


class AlgeoError(Exception):
    """Base class for all errors raised by algeo."""


class DivisionByZero(AlgeoError, ZeroDivisionError):
    pass


class MixedFields(AlgeoError, TypeError):
    pass


class ParseError(AlgeoError, ValueError):
    """Malformed scalar text or algebra file.

    ``position`` is a ``(line, column)`` pair when the location is known.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (line {position[0]}, column {position[1]})"
        super().__init__(message)
        self.position = position


class ValidationError(AlgeoError, ValueError):
    """An input violated a named invariant."""

    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class DimensionMismatch(AlgeoError, ValueError):
    pass


class MixedAlgebras(AlgeoError, ValueError):
    pass


class ArityMismatch(AlgeoError, ValueError):
    pass


class SlotOutOfRange(AlgeoError, IndexError):
    pass


class SlotCollision(AlgeoError, ValueError):
    pass


class BudgetExceeded(AlgeoError, MemoryError):
    pass


class Truncated(AlgeoError):
    """A product in a truncated graded carrier left the truncation."""


class CarrierClosure(AlgeoError):
    """The function-algebra carrier is not closed under the derivation law."""


class DegreeUnderflow(AlgeoError, ValueError):
    pass
