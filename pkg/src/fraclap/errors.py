"""Exception types shared across the package."""


class ConvergenceError(RuntimeError):
    """A series or quadrature did not reach the requested tolerance."""


class SingularPointError(ValueError):
    """A hyper-singular kernel was evaluated at one of its singular points."""
