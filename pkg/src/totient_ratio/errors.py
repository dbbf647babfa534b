"""Exception types shared across the package."""


class TotientRatioError(Exception):
    """Base class for all library errors."""


class InvalidInput(TotientRatioError):
    """Input outside the mathematical domain (e.g. a non-positive integer)."""


class InputTooLarge(TotientRatioError):
    """Input exceeds the configured factorization bound."""


class Overflow(TotientRatioError):
    """Expanded integer would exceed the configured display width."""


class NoSolution(TotientRatioError):
    """The linear Diophantine equation has no solution under the mode."""


class ParseError(TotientRatioError):
    """Text does not match the factored-number grammar."""


class PreconditionViolation(TotientRatioError):
    """An operation was called outside its stated precondition."""


class BoundTooLarge(TotientRatioError):
    """Enumeration bound exceeds the configured limit."""


class NotRepresentableError(TotientRatioError):
    """No representation of the requested rational exists.

    Carries the exhausted branch trace of the backtracking search.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])
