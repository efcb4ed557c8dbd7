"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates a documented precondition."""


class CapacityError(RuntimeError):
    """A brute-force computation would exceed its configured size cap."""


class DegeneracyError(InvalidArgumentError):
    """Input points are not in general position; perturb them and retry."""
