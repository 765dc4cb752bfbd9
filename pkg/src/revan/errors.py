"""Exception hierarchy shared by all modules."""


class RevanError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(RevanError, ValueError):
    """A numeric parameter lies outside its admissible range."""


class DomainError(ParameterError):
    """A function was evaluated outside its mathematical domain."""


class UsageError(RevanError, ValueError):
    """Arguments are individually valid but inconsistent with each other."""


class GraphError(RevanError, ValueError):
    """An edge set violates the simple-graph invariants."""


class FormatError(RevanError, ValueError):
    """An input file does not follow the expected text format."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
