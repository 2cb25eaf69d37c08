"""Exception types shared across the package."""


class KernelCalcError(Exception):
    """Base class for all package errors."""


class ShapeError(KernelCalcError):
    """Kernel combinator applied to children of incompatible shape or dimension."""


class BranchError(KernelCalcError):
    """Principal branch of pow/log not available (base left the right half-plane)."""


class DomainError(KernelCalcError):
    """Evaluation point outside the kernel's domain."""


class EvaluationError(KernelCalcError):
    """Generic evaluation failure (zero kernel value, singular prefactor, ...)."""


class OrderCapError(KernelCalcError):
    """Requested derivative order exceeds the configured cap."""


class ParseError(KernelCalcError):
    """DSL syntax or validation error, carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BracketError(KernelCalcError):
    """A scan/bisection could not find the required sign change."""
