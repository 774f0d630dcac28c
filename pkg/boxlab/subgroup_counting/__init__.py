from .census import (
    FiniteGroup,
    SemidirectQuotient,
    census_to_rows,
    census_z2d4_closedform,
    census_z2d4_extensions,
    census_z2d4_oracle,
    census_z_cross_z2,
    compare_censuses,
    find_violation,
    growth_inequality_check,
    integer_census,
    lattice_claim_failures,
    normal_subgroups,
    oracle_contributions,
    sigma_census,
    sqrt_bound_failures,
)
from .fullbox import fullbox_cycle_retraction, quasi_isometry_constant, quotients_up_to
from .lattices import (
    D4_GENERATORS,
    Sublattice,
    d4_invariant_sublattices,
    enumerate_sublattices,
    invariant_lattice_type,
    invariant_sublattices,
    is_invariant,
)
