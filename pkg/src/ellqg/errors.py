"""Exception types shared across the package."""


class EllqgError(Exception):
    """Base class for all package errors."""


class DomainError(EllqgError, ValueError):
    """An input violates a precondition (divergent product, bad modulus, ...)."""


class PoleError(EllqgError, ArithmeticError):
    """A denominator hit (or came numerically too close to) a theta zero."""


class NonTerminatingError(EllqgError, ValueError):
    """A series that must terminate has no nonpositive-integer parameter."""
