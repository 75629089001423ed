"""Exception types shared across the package."""


class OpnormLabError(Exception):
    """Base class for all package-specific errors."""


class ParseError(OpnormLabError, ValueError):
    """Symbol text could not be parsed.

    Carries the character offset of the offending token when known.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DomainError(OpnormLabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EvaluationError(OpnormLabError, ArithmeticError):
    """Symbol evaluation hit a division by zero or a nonfinite value."""


class QuadratureError(OpnormLabError, RuntimeError):
    """A quadrature rule failed to converge or a consistency check failed."""
