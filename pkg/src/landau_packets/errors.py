"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the validity domain of an operation."""


class SingularConfigurationError(DomainError):
    """No transverse motion (b_perp = 0): the spin mixing ratio is undefined."""


class AccuracyError(RuntimeError):
    """A numerical result failed its internal accuracy check."""


class QuadratureAccuracyError(AccuracyError):
    """Radial quadrature failed the order-doubling convergence check."""


class IntegrationAccuracyError(AccuracyError):
    """ODE integration drifted beyond the allowed invariant tolerance."""
