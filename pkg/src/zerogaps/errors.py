"""Exception hierarchy shared across the package."""


class ZeroGapsError(Exception):
    """Base class for all errors raised by zerogaps."""


class DomainError(ZeroGapsError, ValueError):
    """An argument lies outside the domain of the operation."""


class ToleranceNotMet(ZeroGapsError, ArithmeticError):
    """Adaptive quadrature ran out of subdivisions before reaching its tolerance."""

    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class NoCertificateError(ZeroGapsError):
    """No gap parameter c satisfying the required inequality was found."""

    def __init__(self, message, r=None, ell=None):
        super().__init__(message)
        self.r = r
        self.ell = ell


class ResourceError(ZeroGapsError, MemoryError):
    """A request exceeds the configured sieve budget."""


class ZeroTableError(DomainError):
    """Malformed zero-ordinate input. ``line`` is 1-based, or None."""

    kind = "zero-table"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ZeroTableParseError(ZeroTableError):
    kind = "parse"


class MonotonicityError(ZeroTableError):
    kind = "monotonicity"


class EmptyTableError(ZeroTableError):
    kind = "empty"
