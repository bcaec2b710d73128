"""Exception hierarchy shared by the chessgeo modules."""


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class UnsupportedRegimeError(DomainError):
    """No closed form is available for this refractive index; use the oracle."""


class CoverageError(DomainError):
    """The requested direction is outside the cones where the metric is known."""


class OracleResourceError(RuntimeError):
    """The discretized graph would exceed the configured node budget."""
