"""Exception hierarchy shared by every module."""


class CffError(Exception):
    """Base class for errors raised by this package."""


class DomainError(CffError, ValueError):
    """Parameters fall outside an operation's domain."""


class UnsupportedError(DomainError):
    """The request is well-formed but has no implemented method."""


class StructuralError(CffError, ValueError):
    """An object references vertices or labels its host does not have."""


class BudgetError(CffError, RuntimeError):
    """A size cap or search budget was exceeded."""


class ParseError(CffError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
