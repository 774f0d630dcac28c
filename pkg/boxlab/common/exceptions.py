"""Exceptions raised by boxlab.

Every exception carries the process exit code the command line maps it to:
1 for invalid input, 2 for exhausted budgets and 3 for failed verifications.
"""
from typing import Optional, Tuple


class BoxlabError(Exception):
    """Base class for all boxlab errors"""

    exit_code = 1


class InvalidInputError(BoxlabError, ValueError):
    """Parameters or values that do not describe a valid object"""

    exit_code = 1


class InvalidModulusError(InvalidInputError):
    """A modulus polynomial that is zero or constant"""


class NonUnitError(InvalidInputError):
    """An element that has no multiplicative inverse in its ring"""


class InvalidElementError(InvalidInputError):
    """An element that is not in canonical form for its group family"""


class InvalidHorizonError(InvalidInputError):
    """A matching horizon with an empty central window"""


class CoverageError(InvalidInputError):
    """A census that does not cover the range an inequality needs"""


class EstimationError(InvalidInputError):
    """Data that cannot support the requested fit"""


class OutOfRangeError(BoxlabError, ValueError):
    """A parameter outside the range an operation supports"""

    exit_code = 1


class BudgetExceededError(BoxlabError, RuntimeError):
    """A computation that would exceed its vertex, subset or oracle budget.

    Parameters
    ----------
    message: str
        human readable description
    limit: int
        the budget that was in force
    requested: int
        the size the computation needed, when known
    completed: Tuple[int, int]
        for partial computations, the closed range that was completed
    partial: object
        the partial result covering the completed range, when one exists
    """

    exit_code = 2

    def __init__(
        self,
        message: str,
        limit: Optional[int] = None,
        requested: Optional[int] = None,
        completed: Optional[Tuple[int, int]] = None,
        partial: object = None,
    ):
        super().__init__(message)
        self.limit = limit
        self.requested = requested
        self.completed = completed
        self.partial = partial


class ConvergenceError(BoxlabError, RuntimeError):
    """An iterative eigensolver that stopped before reaching its tolerance"""

    exit_code = 2

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class VerificationFailure(BoxlabError, AssertionError):
    """A checked claim that the computation contradicts"""

    exit_code = 3


class NestednessError(VerificationFailure):
    """A filtration whose k+1-th quotient does not project onto the k-th"""

    def __init__(self, message: str, k: int):
        super().__init__(message)
        self.k = k
