"""Exception hierarchy shared by all modules."""


class TropError(Exception):
    """Base class for every error raised by tropnev."""


class TropicalDivisionError(TropError, ArithmeticError):
    """Division by the tropical zero (bottom has no multiplicative inverse)."""


class WindowError(TropError, ValueError):
    """A query falls outside a function's validity window, or windows are incompatible."""


class DomainError(TropError, ValueError):
    """An argument violates an operation's precondition."""


class DegenerateError(TropError):
    """A curve lies inside a hypersurface, or a dependence certificate was found."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class CapExceededError(TropError):
    """A combinatorial enumeration would exceed its configured size cap."""


class ParseError(TropError, ValueError):
    """Malformed or inconsistent input document."""

    def __init__(self, message, line=None, column=None):
        loc = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(loc + message)
        self.line = line
        self.column = column
