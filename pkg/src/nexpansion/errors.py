"""Exception hierarchy shared across the package."""


class NExpansionError(Exception):
    """Base class for all package-specific errors."""


class DomainError(NExpansionError, ValueError):
    """Input outside the mathematical domain of an operation."""


class AdmissibilityError(DomainError):
    """A digit word violates the admissibility constraint (digit < n or empty)."""


class NoRootError(NExpansionError, ArithmeticError):
    """A root-finding bracket does not contain a sign change."""


class DivergenceError(DomainError):
    """A series parameter lies in the divergent regime (exponent <= 1/2)."""


class CapExceededError(NExpansionError, RuntimeError):
    """A bounded search exhausted its configured cap without success."""


class BudgetExceededError(NExpansionError, RuntimeError):
    """An enumeration would exceed the configured word budget."""


class NonConvergenceError(NExpansionError, RuntimeError):
    """An iterative solver failed to stabilize within its iteration cap."""


class PrecisionInsufficientError(NExpansionError, RuntimeError):
    """A certified comparison fell inside the abstention margin.

    Raised instead of guessing; the caller should retry with more precision
    bits (see ``NEXP_PRECISION_BITS``).
    """
