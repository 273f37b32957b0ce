"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ConfigurationError(ValueError):
    """Inconsistent or incomplete configuration."""


class DataError(ValueError):
    """Malformed or invalid input data (CSV tables, datasets)."""


class DegenerateDesignError(ValueError):
    """The least-squares normal equations are singular."""


class ConvergenceError(RuntimeError):
    """A series or quadrature did not reach its tolerance.

    ``estimate`` holds the best value obtained and ``error_bound`` the
    size of the part that could not be resolved.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
