"""Exception hierarchy shared by every module of the package."""


class ModelError(Exception):
    """Base class for errors raised by the selection model."""

    kind = "model"


class DomainError(ModelError, ValueError):
    """An argument lies outside the domain of the model or kernel."""

    kind = "domain"


class DegenerateThresholdError(ModelError, ValueError):
    """A threshold is so extreme that nobody clears it in floating point."""

    kind = "degenerate-threshold"


class SolverError(ModelError, RuntimeError):
    """The threshold solver failed to bracket or converge."""

    kind = "solver"


class InsufficientSamplesError(ModelError, RuntimeError):
    """Too few Monte Carlo draws survived the conditioning event."""

    kind = "insufficient-samples"
