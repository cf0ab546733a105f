"""Exception hierarchy shared by all modules."""


class ThresholdCumulantsError(ValueError):
    pass


class PoleError(ThresholdCumulantsError, ZeroDivisionError):
    """A rational function was evaluated at one of its poles."""


class InterlacingViolation(ThresholdCumulantsError):
    pass


class DomainError(ThresholdCumulantsError):
    """An inserted value lies outside the unit interval."""


class NotACorner(ThresholdCumulantsError):
    """A u-coordinate is not a concave corner of the diagram."""


CornerError = NotACorner


class ConditionXViolation(ThresholdCumulantsError):
    pass


class ZeroDenominator(ThresholdCumulantsError, ZeroDivisionError):
    def __init__(self, message: str, edge=None):
        super().__init__(message)
        self.edge = edge


class SubsetSumZero(ThresholdCumulantsError):
    pass


class GenericityViolation(ThresholdCumulantsError):
    """Two concave corners differ by an integer."""
