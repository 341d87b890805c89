"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of the model."""


class PoleError(DomainError):
    """Evaluation too close to a resonator pole."""

    def __init__(self, k, omega, omega_k):
        self.k = k
        super().__init__(
            f"omega={omega!r} rad/s sits on the pole of resonator k={k} "
            f"(omega_k={omega_k!r} rad/s)"
        )


class NumericError(ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""

    def __init__(self, message, estimate=None):
        self.estimate = estimate
        super().__init__(message if estimate is None else f"{message} (error estimate {estimate:.3e})")


class ConfigError(ValueError):
    """Invalid solver, grid or run configuration."""


class CapacityError(ConfigError):
    """Requested Hilbert space exceeds the configured maximum dimension."""


class UnsupportedRegimeError(DomainError):
    """Parameters outside the regime where a closed form is valid."""
