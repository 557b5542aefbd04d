"""Exception hierarchy shared by every ppk module."""

from __future__ import annotations


class PPKError(Exception):
    """Base class for all library errors."""


class PresentationError(PPKError, ValueError):
    pass


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownGenerator(PresentationError):
    pass


class DuplicateGenerator(PresentationError):
    pass


class UnknownLetter(PPKError, ValueError):
    pass


class InvalidStructure(PPKError, ValueError):
    pass


class InvalidDecoration(PPKError, ValueError):
    pass


class NoBlock(PPKError, LookupError):
    pass


class NotBlocked(PPKError, ValueError):
    pass


class NotReduced(PPKError, ValueError):
    pass


class SearchBudgetExceeded(PPKError, RuntimeError):
    def __init__(self, tried: int) -> None:
        super().__init__(f"search budget exhausted after {tried} candidates")
        self.tried = tried


class BudgetExceeded(PPKError, RuntimeError):
    """Coset enumeration ran out of room; ``table`` holds the partial result."""

    def __init__(self, table) -> None:
        super().__init__(f"coset budget exceeded ({table.max_cosets} cosets)")
        self.table = table


class IncompleteTable(PPKError, ValueError):
    pass


class InvalidRotation(PPKError, ValueError):
    pass


class NotAPath(PPKError, ValueError):
    pass


class NotTwoConnected(PPKError, ValueError):
    pass


class NotThreeConnected(PPKError, ValueError):
    pass


class NotConsistent(PPKError, ValueError):
    pass


class NotPlanar(PPKError, ValueError):
    pass
