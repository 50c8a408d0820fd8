"""Exception types shared across the package."""


class GhpError(Exception):
    """Base class for all package-specific errors."""


class DomainError(GhpError):
    """Input lies outside the region where an operation is defined."""


class ConvergenceError(GhpError):
    """A series summation or Newton refinement failed to reach its
    tolerance within the configured budget."""


class CausticSingularity(GhpError):
    """Amplitude evaluation was requested too close to the caustic,
    where the ray-to-coordinate map degenerates."""


class MalformedPolynomial(GhpError):
    """Polynomial violates the structural invariants of the family."""
