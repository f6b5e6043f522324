"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside the range where a formula is defined."""


class NotHermitian(ValueError):
    """Matrix is not Hermitian within the accepted tolerance."""


class NoRoot(RuntimeError):
    """A bracketed root search found no sign change."""


class NotConverged(RuntimeError):
    """Time integration hit its horizon before reaching a steady state.

    The partial result is kept on ``result`` so callers can still inspect it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ParseError(ValueError):
    """Malformed configuration text; ``line`` is 1-based, or ``None`` if unknown."""

    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class ValidationError(ValueError):
    """A configuration value is well-formed but outside its allowed range."""

    def __init__(self, key, message):
        super().__init__(message)
        self.key = key


class EmptyData(ValueError):
    """Nothing to plot."""
