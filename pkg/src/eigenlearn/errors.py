"""Exception hierarchy shared across the package."""


class EigenlearnError(Exception):
    """Base class for all package-specific errors."""


class SchemeLookupError(EigenlearnError):
    """Unknown integrator identifier."""


class PoleError(EigenlearnError):
    """A rational amplification function was evaluated at (or learned onto) a pole."""


class DegenerateError(EigenlearnError):
    """Degenerate polynomial input (zero leading coefficient or degree < 1)."""


class IterationError(EigenlearnError):
    """Root iteration failed to converge; carries the best iterate found."""

    def __init__(self, message, best_roots=None, residuals=None):
        super().__init__(message)
        self.best_roots = tuple(best_roots) if best_roots is not None else ()
        self.residuals = tuple(residuals) if residuals is not None else ()


class MultiplicityError(EigenlearnError):
    """Repeated characteristic roots: the pure-exponential mode expansion breaks down."""


class StepSingularError(EigenlearnError):
    """Implicit step cannot be solved (alpha_k - xi*beta_k vanished)."""


class SingularStepError(EigenlearnError):
    """Implicit one-step matrix solve is singular."""


class UnsupportedSchemeError(EigenlearnError):
    """Operation is defined only for a subset of the registry."""


class NyquistError(EigenlearnError):
    """Sampling violates the Nyquist condition; names the violated bound."""


class NonConvergenceError(EigenlearnError):
    """Optimization failed on every start; carries the best iterate."""

    def __init__(self, message, best=None, objective=None):
        super().__init__(message)
        self.best = best
        self.objective = objective


class ValidationError(EigenlearnError):
    """Domain-level input validation failure (maps to CLI exit code 3)."""
