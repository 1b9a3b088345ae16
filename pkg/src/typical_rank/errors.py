"""Exception hierarchy shared by every module of the package."""


class TypicalRankError(Exception):
    """Base class for all errors raised by :mod:`typical_rank`."""


class ArgumentError(TypicalRankError, ValueError):
    """An argument is outside the domain of an operation."""


class DimensionError(TypicalRankError, ValueError):
    """Array shapes are inconsistent with an operation."""


class SingularError(TypicalRankError, ArithmeticError):
    """A matrix is numerically singular.

    Attributes
    ----------
    rcond : float
        Estimated reciprocal condition number (2-norm) of the offending matrix.
    """

    def __init__(self, message: str, rcond: float = 0.0):
        super().__init__(f"{message} (rcond={rcond:.3e})")
        self.rcond = rcond


class NotGenericError(TypicalRankError, ArithmeticError):
    """The input lies on the measure-zero set where a construction breaks down."""


class RankDeficientError(TypicalRankError, ArithmeticError):
    """Candidate columns span fewer than the required number of dimensions."""

    def __init__(self, message: str, rank: int = 0):
        super().__init__(message)
        self.rank = rank


class NoDecompositionAtP(TypicalRankError, ArithmeticError):
    """No rank-p decomposition was found within the direction budget.

    Attributes
    ----------
    classification : Classification
        Sign-behaviour verdict for the contraction that failed.
    """

    def __init__(self, message: str, classification):
        super().__init__(message)
        self.classification = classification


class ParseError(TypicalRankError, ValueError):
    """A file could not be parsed."""


class ValidationError(TypicalRankError, ValueError):
    """A parsed file violates the invariants of its format."""
