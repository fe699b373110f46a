class DomainError(ValueError):
    """An argument lies outside the region where a result is defined or certified."""


class SingularityError(DomainError):
    """Evaluation requested too close to a pole."""


class ConvergenceError(RuntimeError):
    """An iterative method failed in a way the mathematics rules out."""
