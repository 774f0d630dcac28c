from .boxlab_dataclasses import (
    ComponentData,
    DAlphaParams,
    GraphMetrics,
    GroupSpec,
    MatchingVerdict,
    RunConfig,
    SubgroupCensus,
    SuiteResult,
)
from .exceptions import (
    BoxlabError,
    BudgetExceededError,
    ConvergenceError,
    InvalidInputError,
    OutOfRangeError,
    VerificationFailure,
)
from .typing import Element, Elements, Rational
