"""Exception hierarchy shared by every module."""


class FpZetaError(Exception):
    """Base class for all package errors."""


class DomainError(FpZetaError, ValueError):
    """Input outside the mathematical domain (zero where nonzero needed, singular matrix)."""


class ArgumentError(FpZetaError, ValueError):
    """Malformed argument: non-prime p, empty matrix, too few counts."""


class PreconditionError(FpZetaError, ValueError):
    pass


class ValidationError(FpZetaError):
    """Data failed a consistency check (singular curve, counts fitting no rational function)."""


class ResourceError(FpZetaError):
    """Enumeration budget exceeded."""


class FactorizationError(FpZetaError):
    pass


class ConsistencyError(FpZetaError):
    """An exact re-verification failed; indicates an internal bug."""


class UnsupportedError(FpZetaError):
    pass
