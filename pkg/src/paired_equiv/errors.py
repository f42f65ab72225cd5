"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ZeroVarianceError(DomainError):
    """A marginal probability of 0 or 1 makes the binary variable degenerate."""


class InfeasibleCorrelationError(DomainError):
    """A correlation coefficient outside the feasible range for the given marginals."""
