"""Exception types shared across the package."""


class DataError(ValueError):
    """Malformed input data: ragged rows, duplicate points, empty clouds."""


class InvalidNodeError(ValueError):
    """A hierarchy node that does not exist in the tree it was used with."""


class JoinUndefinedError(ValueError):
    """Two nodes have no common upper bound."""


class StabilityError(RuntimeError):
    """The hypothesis of the stability check is not met."""


class HallConditionError(StabilityError):
    """No injective assignment of a witness set within the allowed radius."""

    def __init__(self, message, subset=None, bottleneck=None):
        super().__init__(message)
        self.subset = subset
        self.bottleneck = bottleneck
