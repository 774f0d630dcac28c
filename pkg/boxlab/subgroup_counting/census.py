"""Normal subgroup censuses: Z^2, Z x Z/2 and Z^2 x| D_4.

Three independent routes are implemented for Z^2 x| D_4:

* the index rule: for every k >= 1 one normal subgroup at each of the
  indices k^2, 2k^2, 4k^2, 8k^2 and 2k^2, 4k^2, 8k^2, 16k^2,
* the normal-closure oracle: every normal subgroup N has N n Z^2 = L
  for a D_4-invariant lattice L, and N / L is a normal subgroup of the
  finite group (Z^2 / L) x| D_4 meeting Z^2 / L trivially; those are
  enumerated by closing joins of normal closures of single elements,
* the extension count: N / L is the graph of a D_4-equivariant 1-cocycle
  Q -> Z^2 / L over a normal subgroup Q of D_4 with (I - q) Z^2 in L.

Index 1 (the whole group) is counted in every census.
"""
import logging
import math
from collections import defaultdict
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from boxlab.arithmetics import sigma_divisors
from boxlab.common.boxlab_dataclasses import SubgroupCensus
from boxlab.common.exceptions import BudgetExceededError, CoverageError, InvalidInputError
from boxlab.common.typing import IntMatrix2, Rational

from .lattices import (
    IDENTITY,
    Sublattice,
    d4_invariant_sublattices,
    displacement_lattice_contained,
    invariant_sublattices,
    mat_inv,
    mat_mul,
    mat_vec,
    matrix_group,
)

logger = logging.getLogger(__name__)

ORACLE_MAX_INDEX = 100
CLOSED_FORM_FACTORS = ((1, 2, 4, 8), (2, 4, 8, 16))


class FiniteGroup:
    """A finite group as an index -> element list and a Cayley table on indices"""

    def __init__(self, elements: list, table: np.ndarray):
        self.elements = elements
        self.table = table
        self.identity_idx = int(np.flatnonzero((table == np.arange(len(elements))).all(axis=1))[0])
        rows, cols = np.nonzero(table == self.identity_idx)
        self.inverse_idx = np.empty(len(elements), dtype=np.int64)
        self.inverse_idx[rows] = cols

    def __len__(self) -> int:
        return len(self.elements)

    @staticmethod
    def from_func(elements: list, mult: Callable) -> "FiniteGroup":
        position = {e: i for i, e in enumerate(elements)}
        table = np.zeros((len(elements), len(elements)), dtype=np.int64)
        for (i, a), (j, b) in product(enumerate(elements), repeat=2):
            table[i, j] = position[mult(a, b)]
        return FiniteGroup(list(elements), table)

    def conjugacy_class(self, i: int) -> FrozenSet[int]:
        g = np.arange(len(self))
        return frozenset(int(x) for x in self.table[self.table[g, i], self.inverse_idx[g]])

    def generated(self, gens) -> FrozenSet[int]:
        members = [self.identity_idx]
        seen = {self.identity_idx}
        gens = list(gens)
        for x in members:
            for s in gens:
                y = int(self.table[x, s])
                if y not in seen:
                    seen.add(y)
                    members.append(y)
        return frozenset(seen)

    def normal_closure(self, i: int) -> FrozenSet[int]:
        return self.generated(self.conjugacy_class(i))


def normal_subgroups(
    group: FiniteGroup, keep: Optional[Callable[[FrozenSet[int]], bool]] = None
) -> List[FrozenSet[int]]:
    """All normal subgroups as sets of element indices, smallest first.

    Every normal subgroup is the join of the normal closures of its
    elements, so the closures are joined pairwise until nothing new appears.
    ``keep`` filters the result only; the joins run over all of them.
    """
    found = {frozenset([group.identity_idx])}
    found.update(group.normal_closure(i) for i in range(len(group)))
    frontier = list(found)
    while frontier:
        fresh = []
        current = list(found)
        for n1 in frontier:
            for n2 in current:
                if n1 <= n2 or n2 <= n1:
                    continue
                join = group.generated(n1 | n2)
                if join not in found:
                    found.add(join)
                    fresh.append(join)
        frontier = fresh
    result = [n for n in found if keep is None or keep(n)]
    return sorted(result, key=lambda n: (len(n), sorted(n)))


def d4_group() -> FiniteGroup:
    return FiniteGroup.from_func(list(matrix_group()), mat_mul)


class SemidirectQuotient:
    """(Z^2 / L) x| D_4 for a D_4-invariant lattice L, as a FiniteGroup.

    Elements are (x, y, f) with (x, y) the reduced coset representative and f
    a matrix of D_4; (v, f)(w, g) = (v + f w, f g).
    """

    def __init__(self, L: Sublattice):
        self.L = L
        self.d4 = matrix_group()
        elements = [(x, y, f) for (x, y) in L.cosets() for f in self.d4]
        self.group = FiniteGroup.from_func(elements, self.product)
        self.base = frozenset(i for i, e in enumerate(elements) if e[2] == IDENTITY)

    def product(self, a, b):
        x, y = mat_vec(a[2], (b[0], b[1]))
        return (*self.L.reduce((a[0] + x, a[1] + y)), mat_mul(a[2], b[2]))

    def meets_base_trivially(self, subgroup: FrozenSet[int]) -> bool:
        return len(subgroup & self.base) == 1


def census_z2d4_closedform(maxN: int) -> SubgroupCensus:
    """Applies the index rule k^2, 2k^2, 4k^2, 8k^2 / 2k^2, 4k^2, 8k^2, 16k^2"""
    if maxN < 1:
        raise InvalidInputError(f"maxN must be >= 1, got {maxN}")
    a = defaultdict(int)
    k = 1
    while k * k <= maxN:
        for factors in CLOSED_FORM_FACTORS:
            for c in factors:
                if c * k * k <= maxN:
                    a[c * k * k] += 1
        k += 1
    return SubgroupCensus(maxN, dict(a), "closed-form")


def _admits_nontrivial_image(L: Sublattice) -> bool:
    return any(displacement_lattice_contained(L, f) for f in matrix_group() if f != IDENTITY)


def oracle_contributions(maxN: int, shortcut: bool = True) -> Dict[Sublattice, Dict[int, int]]:
    """Per invariant lattice L, the indices of the normal subgroups N with N n Z^2 = L.

    If (v, f) lies in N then N contains (I - f) w for every w, so when no
    f != I has (I - f) Z^2 inside L the image of N in D_4 is trivial and
    N = L. With ``shortcut=False`` the quotient is enumerated for every L
    instead, which cross-checks that argument.
    """
    contributions = {}
    for L in d4_invariant_sublattices(maxN):
        counts = defaultdict(int)
        if shortcut and not _admits_nontrivial_image(L):
            counts[8 * L.index] += 1
        else:
            quotient = SemidirectQuotient(L)
            order = len(quotient.group)
            for N in normal_subgroups(quotient.group, keep=quotient.meets_base_trivially):
                counts[order // len(N)] += 1
            logger.debug(f"{L}: order {order}, normal subgroups off the base {dict(counts)}")
        contributions[L] = {n: c for n, c in sorted(counts.items()) if n <= maxN}
    return contributions


def census_z2d4_oracle(maxN: int) -> SubgroupCensus:
    """Normal subgroup census of Z^2 x| D_4 by the normal-closure oracle.

    Raises
    ------
    BudgetExceededError
        for maxN above the oracle budget; the census up to the budget is
        attached as ``partial``
    """
    if maxN < 1:
        raise InvalidInputError(f"maxN must be >= 1, got {maxN}")
    covered = min(maxN, ORACLE_MAX_INDEX)
    a = defaultdict(int)
    for counts in oracle_contributions(covered).values():
        for n, c in counts.items():
            a[n] += c
    census = SubgroupCensus(covered, dict(a), "normal-closure-oracle")
    if maxN > ORACLE_MAX_INDEX:
        raise BudgetExceededError(
            f"the normal-closure oracle covers indices up to {ORACLE_MAX_INDEX}, {maxN} requested",
            limit=ORACLE_MAX_INDEX,
            requested=maxN,
            completed=(1, covered),
            partial=census,
        )
    return census


def _subgroup_generators(group: FiniteGroup, members: FrozenSet[int]) -> List[int]:
    gens, span = [], frozenset([group.identity_idx])
    for i in sorted(members):
        if i not in span:
            gens.append(i)
            span = group.generated(gens)
    return gens


def count_equivariant_cocycles(L: Sublattice, d4: FiniteGroup, Q: FrozenSet[int]) -> int:
    """Number of D_4-equivariant 1-cocycles c: Q -> Z^2 / L"""
    mats = d4.elements
    gens = _subgroup_generators(d4, Q)
    cosets = L.cosets()
    count = 0
    for values in product(cosets, repeat=len(gens)):
        c = {d4.identity_idx: (0, 0)}
        consistent = True
        order = [d4.identity_idx]
        for q in order:
            for s, v in zip(gens, values):
                x, y = mat_vec(mats[q], v)
                image = L.reduce((c[q][0] + x, c[q][1] + y))
                qs = int(d4.table[q, s])
                if qs not in c:
                    c[qs] = image
                    order.append(qs)
                elif c[qs] != image:
                    consistent = False
                    break
            if not consistent:
                break
        if not consistent:
            continue
        if not all(
            c[int(d4.table[q, r])]
            == L.reduce(tuple(u + w for u, w in zip(c[q], mat_vec(mats[q], c[r]))))
            for q in Q
            for r in Q
        ):
            continue
        if all(
            c[int(d4.table[d4.table[f, q], d4.inverse_idx[f]])] == L.reduce(mat_vec(mats[f], c[q]))
            for f in range(len(d4))
            for q in Q
        ):
            count += 1
    return count


def census_z2d4_extensions(maxN: int) -> SubgroupCensus:
    """Normal subgroup census of Z^2 x| D_4 by counting equivariant cocycles"""
    if maxN < 1:
        raise InvalidInputError(f"maxN must be >= 1, got {maxN}")
    d4 = d4_group()
    quotients = normal_subgroups(d4)
    a = defaultdict(int)
    for L in d4_invariant_sublattices(maxN):
        for Q in quotients:
            n = L.index * len(d4) // len(Q)
            if n > maxN:
                continue
            if not all(displacement_lattice_contained(L, d4.elements[q]) for q in Q):
                continue
            a[n] += count_equivariant_cocycles(L, d4, Q)
    return SubgroupCensus(maxN, dict(a), "extension-count")


def sigma_census(maxN: int) -> SubgroupCensus:
    """Z^2: a_n = sigma(n) subgroups of index n, all normal"""
    return SubgroupCensus(maxN, {n: sigma_divisors(n) for n in range(1, maxN + 1)}, "closed-form")


def integer_census(maxN: int) -> SubgroupCensus:
    """Z: exactly one subgroup nZ of every index"""
    return SubgroupCensus(maxN, {n: 1 for n in range(1, maxN + 1)}, "closed-form")


def census_z_cross_z2(maxN: int) -> Tuple[SubgroupCensus, Dict[int, int]]:
    """Census of Z x Z/2 and K_n = #{M : p(M) = nZ}.

    The finite index subgroups are nZ x Z/2 (index n) and <(n, eps)> for
    eps in {0, 1} (index 2n); all of them are normal.
    """
    if maxN < 1:
        raise InvalidInputError(f"maxN must be >= 1, got {maxN}")
    a = defaultdict(int)
    K = defaultdict(int)
    for n in range(1, maxN + 1):
        subgroups = [(n, None, n), (n, 0, 2 * n), (n, 1, 2 * n)]
        for projection, _, index in subgroups:
            K[projection] += 1
            if index <= maxN:
                a[index] += 1
    return SubgroupCensus(maxN, dict(a), "enumeration"), dict(K)


def compare_censuses(first: SubgroupCensus, second: SubgroupCensus, maxN: int = None) -> List[int]:
    """Indices n <= maxN at which the two censuses differ"""
    maxN = min(first.max_n, second.max_n) if maxN is None else maxN
    if maxN > min(first.max_n, second.max_n):
        raise CoverageError(f"censuses cover {min(first.max_n, second.max_n)}, {maxN} requested")
    return [n for n in range(1, maxN + 1) if first.a_n(n) != second.a_n(n)]


def sqrt_bound_failures(census: SubgroupCensus, lower: int = 1, upper: int = 10) -> List[int]:
    """The n with lower sqrt(n) <= s_n <= upper sqrt(n) failing, squared exactly"""
    return [
        n
        for n in range(1, census.max_n + 1)
        if not lower * lower * n <= census.s_n(n) ** 2 <= upper * upper * n
    ]


def _window(n: int, A: Fraction, B: Fraction) -> Tuple[int, int]:
    return math.ceil(A * n), math.floor(B * n)


def growth_inequality_check(
    census_G: SubgroupCensus,
    census_H: SubgroupCensus,
    A: Rational,
    B: Rational,
    horizon: int,
    find_violation: bool = False,
) -> dict:
    """Checks a_n(G) <= s_floor(Bn)(H) - s_ceil(An)(H) for 1 <= n <= horizon.

    In ``find_violation`` mode the scan stops at the least violating n.

    Raises
    ------
    CoverageError
        when G's census ends before the horizon or H's before floor(B horizon)
    """
    A, B = Fraction(A), Fraction(B)
    if not 0 < A <= B:
        raise InvalidInputError(f"need 0 < A <= B, got A = {A}, B = {B}")
    if census_G.max_n < horizon:
        raise CoverageError(f"census of G is missing indices [{census_G.max_n + 1}, {horizon}]")
    _, top = _window(horizon, A, B)
    if census_H.max_n < top:
        raise CoverageError(f"census of H is missing indices [{census_H.max_n + 1}, {top}]")
    violations = []
    for n in range(1, horizon + 1):
        low, high = _window(n, A, B)
        if census_G.a_n(n) > census_H.s_n(high) - census_H.s_n(low):
            violations.append(n)
            if find_violation:
                break
    first = violations[0] if violations else None
    witness = None
    if first is not None:
        low, high = _window(first, A, B)
        witness = {
            "n": first,
            "a_n": census_G.a_n(first),
            "s_high": census_H.s_n(high),
            "s_low": census_H.s_n(low),
            "window": [low, high],
        }
    return {
        "A": str(A),
        "B": str(B),
        "horizon": horizon,
        "holds": not violations,
        "violations": violations[:20],
        "violation_count": None if find_violation else len(violations),
        "first_violation": witness,
    }


def find_violation(
    census_G: SubgroupCensus, census_H: SubgroupCensus, A: Rational, B: Rational, horizon: int
) -> Optional[int]:
    """The least n <= horizon violating the growth inequality, or None"""
    report = growth_inequality_check(census_G, census_H, A, B, horizon, find_violation=True)
    return report["first_violation"]["n"] if report["first_violation"] else None


def census_to_rows(census: SubgroupCensus) -> List[dict]:
    return [
        {"n": n, "a_n": census.a_n(n), "s_n": census.s_n(n), "provenance": census.provenance}
        for n in range(1, census.max_n + 1)
    ]


def lattice_claim_failures(max_index: int) -> List[Sublattice]:
    """Invariant lattices that are neither kZ^2 nor contain 2kZ^2 with index 2"""
    failures = []
    for L in invariant_sublattices(max_index):
        if L == Sublattice.scalar(L.a):
            continue
        k = L.a
        if L.index == 2 * k * k and L.contains_lattice(Sublattice.scalar(2 * k)):
            continue
        failures.append(L)
    return failures
