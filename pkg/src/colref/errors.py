class ColrefError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ColrefError, ValueError):
    """Raised when a graph file does not conform to the text format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractViolation(ColrefError, ValueError):
    """Raised when an operation is called outside its precondition."""
