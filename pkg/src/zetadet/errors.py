"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of a special function (e.g. a <= 0)."""


class PoleError(ValueError):
    """Evaluation requested exactly at a pole."""


class ContinuationFailure(RuntimeError):
    """The analytic continuation could not reach the requested accuracy."""
