"""Exception types shared across the package."""


class DomainError(ValueError):
    """A point lies outside the domain of a cost function (or a metric)."""

    def __init__(self, message, index=None, iteration=None):
        super().__init__(message)
        self.index = index
        self.iteration = iteration


class NumericError(ArithmeticError):
    """A computation produced a non-finite value."""


class ImageFormatError(ValueError):
    """An image file is malformed or uses an unsupported variant."""
