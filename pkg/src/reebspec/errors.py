"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ReebError(Exception):
    """Base class for every error raised by reebspec."""


class DomainError(ReebError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class FieldMismatch(DomainError):
    """Two irrational quadratic values live in different fields Q(sqrt d)."""


class DivisionByZero(ReebError, ZeroDivisionError):
    pass


class RationalInput(DomainError):
    """An irrational value was required but a rational one was given."""


class KindError(DomainError):
    """The orbit kind does not support the requested operation."""


class PrecisionExhausted(ReebError, ArithmeticError):
    """Interval refinement hit its precision cap without deciding."""


class NotFound(ReebError, LookupError):
    """A bounded search ran out of budget. Says nothing about existence."""

    def __init__(self, message: str, bound: int | None = None) -> None:
        super().__init__(message)
        self.bound = bound


class ActionTie(ReebError):
    """Two distinct iterates share the same action."""

    def __init__(self, message: str, witness: tuple = ()) -> None:
        super().__init__(message)
        self.witness = witness


class SubsequenceViolation(ReebError):
    """A jump of the smaller sequence is not a jump of the larger one."""

    def __init__(self, message: str, k: int | None = None) -> None:
        super().__init__(message)
        self.k = k


class KotschickAnomaly(RuntimeWarning):
    """Verified jump subsequence without an integer ratio xi1 = k*xi2."""
