from .assembly import (
    BoxSpace,
    check_gap_rule,
    check_nested,
    coarse_union_offsets,
    components,
    injectivity_radii,
    verify_filtration,
)
from .dalpha import (
    dalpha_check,
    dalpha_estimate,
    diameter_band,
    expansion_report,
    measured_constant,
)
from .filtrations import (
    LamplighterSchedule,
    SLCongruence,
    SolCongruence,
    SolFibonacciSchedule,
    ZCrossZ2Schedule,
    ZSchedule,
    parse_schedule,
)
