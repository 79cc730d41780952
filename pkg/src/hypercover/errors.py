"""Exception types shared across the package.

The CLI maps each class to an exit code, so keep the hierarchy flat.
"""


class HypercoverError(Exception):
    """Base class for all package errors."""


class PreconditionError(HypercoverError, ValueError):
    """A hypothesis required by an operation does not hold (e.g. gcd(m,k) != 1)."""


class ParseError(HypercoverError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(HypercoverError, RuntimeError):
    """Exhaustive enumeration would exceed the configured candidate budget."""


class ConvergenceError(HypercoverError, RuntimeError):
    def __init__(self, message, gap=None, iterations=None):
        self.gap = gap
        self.iterations = iterations
        super().__init__(message)
