from fractions import Fraction

import numpy as np
import pytest

from boxlab.arithmetics import sigma_divisors
from boxlab.common.boxlab_dataclasses import SubgroupCensus
from boxlab.common.exceptions import BudgetExceededError, CoverageError, InvalidInputError
from boxlab.subgroup_counting import (
    D4_GENERATORS,
    FiniteGroup,
    SemidirectQuotient,
    Sublattice,
    census_to_rows,
    census_z2d4_closedform,
    census_z2d4_extensions,
    census_z2d4_oracle,
    census_z_cross_z2,
    compare_censuses,
    d4_invariant_sublattices,
    enumerate_sublattices,
    find_violation,
    fullbox_cycle_retraction,
    growth_inequality_check,
    integer_census,
    invariant_lattice_type,
    invariant_sublattices,
    is_invariant,
    lattice_claim_failures,
    normal_subgroups,
    oracle_contributions,
    quasi_isometry_constant,
    quotients_up_to,
    sigma_census,
    sqrt_bound_failures,
)
from boxlab.subgroup_counting import census as census_module
from boxlab.subgroup_counting.census import d4_group
from boxlab.subgroup_counting.lattices import displacement_lattice_contained, matrix_group


def test_sublattice_hermite_normal_form():
    with pytest.raises(InvalidInputError):
        Sublattice(2, 3, 3)
    L = Sublattice(2, 1, 3)
    assert L.index == 6
    assert L.contains((2, 1))
    assert not L.contains((1, 0))
    assert L.reduce((5, 4)) == (1, 2)
    assert len(L.cosets()) == 6


def test_sublattice_from_basis():
    assert Sublattice.from_basis([(2, 2), (0, 4)]) == Sublattice(2, 2, 4)
    assert Sublattice.from_basis([(1, 1), (1, -1)]) == Sublattice.diagonal(1)
    with pytest.raises(InvalidInputError):
        Sublattice.from_basis([(1, 1), (2, 2)])


def test_sublattice_counts_are_divisor_sums():
    """Z^2 has sigma(n) sublattices of index n"""
    lattices = enumerate_sublattices(30)
    for n in range(1, 31):
        assert sum(1 for L in lattices if L.index == n) == sigma_divisors(n)


def test_d4_is_dihedral_of_order_eight():
    group = matrix_group(D4_GENERATORS)
    assert len(group) == 8
    assert group[0] == ((1, 0), (0, 1))


def test_invariant_lattices():
    """The D_4-invariant lattices are kZ^2 and k(Z(1, 1) + Z(1, -1))"""
    found = d4_invariant_sublattices(50)
    assert Sublattice.scalar(3) in found
    assert Sublattice.diagonal(2) in found
    assert Sublattice(1, 0, 2) not in found
    assert all(invariant_lattice_type(L)[0] in ("scalar", "diagonal") for L in found)
    assert len(found) == sum(1 for k in range(1, 8) if k * k <= 50) + sum(
        1 for k in range(1, 6) if 2 * k * k <= 50
    )
    assert not is_invariant(Sublattice(1, 0, 3))
    assert lattice_claim_failures(50) == []


def test_shape_filter_keeps_every_invariant_lattice():
    """Scanning all HNF forms finds the same 14 + 10 invariant lattices"""
    unfiltered = invariant_sublattices(200)
    assert unfiltered == d4_invariant_sublattices(200)
    assert len(unfiltered) == 24
    assert all(L.d in (L.a, 2 * L.a) for L in unfiltered)


def test_invariance_rejects_non_unimodular_generators():
    with pytest.raises(InvalidInputError):
        is_invariant(Sublattice.scalar(1), gens=[((2, 0), (0, 1))])
    with pytest.raises(InvalidInputError):
        invariant_sublattices(4, gens=[((1, 1), (1, 1))])
    assert is_invariant(Sublattice(1, 0, 2), gens=[((1, 0), (0, -1))])



def test_displacement_lattice():
    """(I - f) Z^2 for the swap f is spanned by (1, -1)"""
    swap = ((0, 1), (1, 0))
    assert displacement_lattice_contained(Sublattice.diagonal(1), swap)
    assert not displacement_lattice_contained(Sublattice.scalar(2), swap)


def test_normal_subgroups_of_d4():
    """D_4 has 6 normal subgroups: 1, the centre, three of order 4 and D_4"""
    subgroups = normal_subgroups(d4_group())
    assert sorted(len(N) for N in subgroups) == [1, 2, 4, 4, 4, 8]


def test_normal_subgroups_of_a_cyclic_group():
    elements = list(range(12))
    group = FiniteGroup.from_func(elements, lambda a, b: (a + b) % 12)
    assert len(normal_subgroups(group)) == 6
    assert group.conjugacy_class(5) == frozenset([5])


def test_semidirect_quotient_order():
    quotient = SemidirectQuotient(Sublattice.scalar(2))
    assert len(quotient.group) == 4 * 8
    assert len(quotient.base) == 4
    table = quotient.group.table
    assert np.all(np.sort(table, axis=1) == np.arange(32))


def test_closed_form_census():
    """Index rule values: a_1 = 1, a_2 = 2, a_4 = 3, a_8 = 4, a_9 = 1"""
    census = census_z2d4_closedform(20)
    assert [census.a_n(n) for n in (1, 2, 3, 4, 8, 9)] == [1, 2, 0, 3, 4, 1]
    assert census.s_n(4) == 6
    assert census.provenance == "closed-form"
    assert sqrt_bound_failures(census_z2d4_closedform(400)) == []


def test_oracle_agrees_with_cocycle_count():
    """Two independent counts of the normal subgroups of Z^2 x| D_4"""
    oracle = census_z2d4_oracle(16)
    extensions = census_z2d4_extensions(16)
    assert compare_censuses(oracle, extensions) == []
    assert oracle.a_n(1) == 1
    # the quotient map onto D_4 alone gives three subgroups of index 2
    assert oracle.a_n(2) >= 3


def test_trivial_image_shortcut_matches_full_enumeration():
    """Lattices without a nontrivial image in D_4 contribute only N = L"""
    assert not census_module._admits_nontrivial_image(Sublattice.scalar(3))
    assert census_module._admits_nontrivial_image(Sublattice.scalar(2))
    assert oracle_contributions(16) == oracle_contributions(16, shortcut=False)


def test_closed_form_disagrees_with_the_oracle():
    assert compare_censuses(census_z2d4_closedform(16), census_z2d4_oracle(16)) != []


def test_oracle_budget_carries_partial_census(monkeypatch):
    monkeypatch.setattr(census_module, "ORACLE_MAX_INDEX", 8)
    with pytest.raises(BudgetExceededError) as exc_info:
        census_z2d4_oracle(9)
    assert exc_info.value.completed == (1, 8)
    assert exc_info.value.partial.max_n == 8
    assert exc_info.value.partial.a_n(1) == 1


def test_integer_and_sigma_censuses():
    assert sigma_census(6).a_n(6) == 12
    assert integer_census(5).s_n(5) == 5
    with pytest.raises(InvalidInputError):
        integer_census(5).s_n(6)


def test_z_cross_z2_census():
    """a_n is 1 for odd n and 3 for even n; K_n = 3"""
    census, K = census_z_cross_z2(10)
    assert [census.a_n(n) for n in range(1, 7)] == [1, 3, 1, 3, 1, 3]
    assert all(K[n] == 3 for n in range(1, 11))


def test_growth_inequality():
    """Z against Z holds; Z^2 against the closed form fails at n = 3"""
    report = growth_inequality_check(integer_census(100), integer_census(200), Fraction(1, 2), 2, 100)
    assert report["holds"]
    assert report["violation_count"] == 0
    assert find_violation(sigma_census(50), census_z2d4_closedform(100), Fraction(1, 2), 2, 50) == 3


def test_growth_inequality_coverage():
    with pytest.raises(CoverageError):
        growth_inequality_check(sigma_census(10), sigma_census(15), Fraction(1, 2), 2, 10)
    with pytest.raises(CoverageError):
        growth_inequality_check(sigma_census(5), sigma_census(40), Fraction(1, 2), 2, 10)
    with pytest.raises(InvalidInputError):
        growth_inequality_check(sigma_census(10), sigma_census(40), 2, 1, 10)


def test_census_rows():
    rows = census_to_rows(SubgroupCensus(3, {1: 1, 3: 2}, "closed-form"))
    assert rows[-1] == {"n": 3, "a_n": 2, "s_n": 3, "provenance": "closed-form"}


def test_quotients_up_to():
    specs = quotients_up_to(4)
    assert [s.params for s in specs] == [(1, 2), (2, 2), (1, 0), (1, 1), (3, 2), (4, 2), (2, 0), (2, 1)]


def test_quasi_isometry_constant():
    d = np.array([[0, 1], [1, 0]])
    assert quasi_isometry_constant(d, d) == 1
    assert quasi_isometry_constant(np.array([[0, 4], [4, 0]]), np.array([[0, 1], [1, 0]])) == 2


def test_fullbox_cycle_retraction():
    """Every quotient of Z x Z/2 retracts onto its cycle with A = 1"""
    report = fullbox_cycle_retraction(24)
    assert report["max_A"] == 1
    assert report["attained_at_order"] == 1
    assert report["K"] == 3
    assert all(row["additive_gap"] <= 1 for row in report["quotients"])
    with pytest.raises(BudgetExceededError):
        fullbox_cycle_retraction(201)
