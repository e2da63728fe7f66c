"""Exception hierarchy shared by every module of the package."""


class ToeplitzError(Exception):
    """Base class for all errors raised by :mod:`bergman_toeplitz`."""


class ParseError(ToeplitzError, ValueError):
    """Malformed scalar, symbol expression or JSON input."""

    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if text is not None and position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


class NotInClass(ToeplitzError, ValueError):
    """A monomial z^a conj(z)^b with min(a, b) >= 2 appeared in a symbol."""


class PoleAtPoint(ToeplitzError, ZeroDivisionError):
    """A rational function was evaluated at a root of its denominator."""


class EmptySymbol(ToeplitzError, ValueError):
    pass


class ZeroCoefficient(ToeplitzError, ValueError):
    pass


class HypothesesNotMet(ToeplitzError):
    """The nondegeneracy assumptions on the symbol pair do not hold."""


class InternalInconsistency(ToeplitzError):
    """Two independent decision routes disagreed where they provably must not."""


class MismatchReport(ToeplitzError):
    """Banded calculus and dense oracle disagree on a matrix entry."""

    def __init__(self, label, row, col, expected, actual):
        self.label = label
        self.row = row
        self.col = col
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{label}: entry [{row}][{col}] oracle={expected} bands={actual}"
        )
