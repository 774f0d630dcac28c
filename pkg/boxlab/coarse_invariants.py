"""Almost permutations of N and ratio-bounded matchings of volume sequences.

A coarse equivalence between box spaces induces an almost permutation of the
component indices with bounded displacement, along which the ratios of the
component orders stay bounded. On a finite horizon the second condition is an
exact bipartite matching problem: index k of one sequence may be matched to
index j of the other when |j - k| <= D and the orders differ by a factor of at
most R. A failed search is a certificate only at the budget (D, R, H) it was
run with, never a proof of unboundedness.
"""
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms import bipartite
from sympy import isprime

from boxlab.arithmetics import nks, sl_order
from boxlab.common.boxlab_dataclasses import MatchingVerdict
from boxlab.common.exceptions import (
    InvalidHorizonError,
    InvalidInputError,
    VerificationFailure,
)
from boxlab.common.typing import Rational
from boxlab.utils import parse_rational

logger = logging.getLogger(__name__)


class Displacement(NamedTuple):
    max_displacement: int
    argmax: int
    growing: bool


@dataclass
class AlmostPermutation:
    """An injective map between cofinite subsets of N, truncated at a horizon.

    horizon: int
        indices 1..horizon are considered

    mapping: Dict[int, int]
        k -> alpha(k) for every k in the domain; indices of 1..horizon missing
        from the mapping are the excluded ones
    """

    horizon: int
    mapping: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.horizon < 1:
            raise InvalidInputError(f"horizon must be >= 1, got {self.horizon}")
        if len(set(self.mapping.values())) != len(self.mapping):
            raise InvalidInputError("an almost permutation must be injective")

    def __call__(self, k: int) -> int:
        return self.mapping[k]

    @property
    def excluded_domain(self) -> List[int]:
        return [k for k in range(1, self.horizon + 1) if k not in self.mapping]

    @property
    def excluded_image(self) -> List[int]:
        image = set(self.mapping.values())
        return [j for j in range(1, self.horizon + 1) if j not in image]

    def is_total(self) -> bool:
        return all(k in self.mapping for k in range(1, self.horizon + 1))

    @classmethod
    def identity(cls, horizon: int) -> "AlmostPermutation":
        return cls(horizon, {k: k for k in range(1, horizon + 1)})

    @classmethod
    def from_pairs(cls, pairs, horizon: int = None) -> "AlmostPermutation":
        mapping = {int(k): int(j) for k, j in pairs}
        if horizon is None:
            horizon = max(mapping, default=1)
        return cls(horizon, mapping)

    @classmethod
    def block_cyclic(cls, horizon: int) -> "AlmostPermutation":
        """Rotates each of the blocks {1}, {2, 3}, {4, 5, 6}, ... by one step.

        Every block of size m moves its last element back by m - 1, so the
        displacement is unbounded while every block is mapped onto itself. A
        block cut off by the horizon is rotated within what remains of it.
        """
        mapping = {}
        start, size = 1, 1
        while start <= horizon:
            block = list(range(start, min(start + size, horizon + 1)))
            for i, k in enumerate(block):
                mapping[k] = block[(i + 1) % len(block)]
            start += size
            size += 1
        return cls(horizon, mapping)

    @classmethod
    def window_shuffle(cls, horizon: int, width: int, seed: int = 0) -> "AlmostPermutation":
        """Shuffles each window {1..w}, {w+1..2w}, ... with a seeded generator"""
        if width < 1:
            raise InvalidInputError(f"window width must be >= 1, got {width}")
        rng = np.random.default_rng(seed)
        mapping = {}
        for start in range(1, horizon + 1, width):
            window = np.arange(start, min(start + width, horizon + 1))
            for k, j in zip(window, rng.permutation(window)):
                mapping[int(k)] = int(j)
        return cls(horizon, mapping)


def displacement(ap: AlmostPermutation) -> Displacement:
    """Largest |alpha(k) - k| over the domain and the least k attaining it.

    ``growing`` is set when the maximum is first reached in the top tenth of
    the horizon: no bound at or below the reported maximum is certified
    beyond the horizon.

    Examples
    --------
    >>> displacement(AlmostPermutation.identity(100))
    Displacement(max_displacement=0, argmax=1, growing=False)
    """
    best, argmax = 0, None
    for k in sorted(ap.mapping):
        d = abs(ap.mapping[k] - k)
        if argmax is None or d > best:
            best, argmax = d, k
    if argmax is None:
        return Displacement(0, 0, False)
    growing = best > 0 and argmax > ap.horizon - ap.horizon // 10
    if growing:
        logger.debug(f"displacement {best} first reached at {argmax} of {ap.horizon}")
    return Displacement(best, argmax, growing)


def has_bounded_displacement(ap: AlmostPermutation, D: int) -> bool:
    return all(abs(j - k) <= D for k, j in ap.mapping.items())


def permut_hypothesis(ap: AlmostPermutation, N: int) -> dict:
    """Checks l >= k + N  =>  alpha(l) > alpha(k) on the whole horizon.

    When the hypothesis holds, the bounds k - N <= alpha(k) <= k + N are
    checked as well for N <= k <= H - N.

    Returns
    -------
    dict
        {"holds", "violation" (a pair (k, l) or None), "bounds_hold",
        "bound_violation" (an index or None)}
    """
    if not ap.is_total():
        raise InvalidInputError("the hypothesis check needs a map that is total on 1..H")
    H = ap.horizon
    report = {"N": N, "holds": True, "violation": None, "bounds_hold": None, "bound_violation": None}
    # prefix maximum of alpha over 1..l-N, with the index attaining it
    prefix_max, prefix_arg = None, None
    for l in range(N + 1, H + 1):
        k = l - N
        if prefix_max is None or ap(k) > prefix_max:
            prefix_max, prefix_arg = ap(k), k
        if ap(l) <= prefix_max:
            report["holds"] = False
            report["violation"] = (prefix_arg, l)
            return report
    report["bounds_hold"] = True
    for k in range(max(N, 1), H - N + 1):
        if not k - N <= ap(k) <= k + N:
            report["bounds_hold"] = False
            report["bound_violation"] = k
            break
    return report


def _within_ratio(a: int, b: int, R: Fraction) -> bool:
    # max(a/b, b/a) <= R, cross-multiplied
    return a * R.denominator <= b * R.numerator and b * R.denominator <= a * R.numerator


def _check_sequences(seqA: Sequence[int], seqB: Sequence[int], D: int, R: Fraction, H: int):
    if D < 0:
        raise InvalidInputError(f"displacement budget must be >= 0, got {D}")
    if R < 1:
        raise InvalidInputError(f"ratio budget must be >= 1, got {R}")
    if H <= 2 * D:
        raise InvalidHorizonError(f"horizon {H} leaves no window [D+1, H-D] for D = {D}")
    for name, seq in (("first", seqA), ("second", seqB)):
        if len(seq) < H:
            raise InvalidInputError(f"{name} sequence has {len(seq)} terms, horizon {H} needs more")
        if any(seq[i] >= seq[i + 1] for i in range(H - 1)):
            raise InvalidInputError(f"{name} sequence is not strictly increasing")


def verify_matching(
    seqA: Sequence[int],
    seqB: Sequence[int],
    assignment: Dict[int, int],
    D: int,
    R: Rational,
) -> bool:
    """Re-checks an assignment from scratch: injective, |j - k| <= D, ratios <= R"""
    R = Fraction(R)
    if len(set(assignment.values())) != len(assignment):
        return False
    for k, j in assignment.items():
        if not (1 <= k <= len(seqA) and 1 <= j <= len(seqB)):
            return False
        if abs(j - k) > D:
            return False
        if not _within_ratio(int(seqA[k - 1]), int(seqB[j - 1]), R):
            return False
    return True


def ratio_bounded_matching(
    seqA: Sequence[int],
    seqB: Sequence[int],
    D: int,
    R: Rational,
    H: int,
) -> MatchingVerdict:
    """Searches for an injective k -> j total on the window [D+1, H-D].

    The identity assignment is tried first; otherwise a maximum matching of
    the banded candidate graph is computed with Hopcroft-Karp. When it does
    not cover the window, König's theorem turns a minimum vertex cover into
    a set of window indices whose candidates are too few (Hall's condition
    fails), which is returned as the obstruction.

    Parameters
    ----------
    seqA, seqB: Sequence[int]
        strictly increasing exact orders, seq[k - 1] is the k-th term

    D: int
        displacement budget

    R: Rational
        ratio budget, R >= 1

    H: int
        horizon, H > 2D

    Returns
    -------
    MatchingVerdict
    """
    R = Fraction(R)
    seqA = [int(x) for x in seqA]
    seqB = [int(x) for x in seqB]
    _check_sequences(seqA, seqB, D, R, H)
    window = range(D + 1, H - D + 1)

    identity = {k: k for k in window}
    if verify_matching(seqA, seqB, identity, D, R):
        return MatchingVerdict("matched", D, R, H, assignment=identity)

    graph = nx.Graph()
    top = [("a", k) for k in window]
    graph.add_nodes_from(top, bipartite=0)
    graph.add_nodes_from((("b", j) for j in range(1, H + 1)), bipartite=1)
    for k in window:
        for j in range(max(1, k - D), min(H, k + D) + 1):
            if _within_ratio(seqA[k - 1], seqB[j - 1], R):
                graph.add_edge(("a", k), ("b", j))

    isolated = [k for k in window if graph.degree(("a", k)) == 0]
    if isolated:
        k = isolated[0]
        logger.debug(f"index {k} has no admissible partner within D = {D}, R = {R}")
        obstruction = {"hall_set": [k], "neighbourhood": [], "isolated": len(isolated)}
        return MatchingVerdict("distinguished", D, R, H, obstruction=obstruction)

    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=top)
    assignment = {node[1]: matching[node][1] for node in top if node in matching}
    if len(assignment) == len(window):
        if not verify_matching(seqA, seqB, assignment, D, R):
            raise VerificationFailure("the matching found does not re-verify")
        return MatchingVerdict("matched", D, R, H, assignment=assignment)

    cover = bipartite.to_vertex_cover(graph, matching, top_nodes=top)
    hall_set = sorted(node[1] for node in top if node not in cover)
    neighbourhood = sorted({j for k in hall_set for _, (_, j) in graph.edges(("a", k))})
    if len(neighbourhood) >= len(hall_set):
        raise VerificationFailure("vertex cover does not yield a Hall obstruction")
    obstruction = {"hall_set": hall_set, "neighbourhood": neighbourhood, "isolated": 0}
    return MatchingVerdict("distinguished", D, R, H, obstruction=obstruction)


def nks_sequence(s: Rational, length: int) -> List[int]:
    return [nks(s, k) for k in range(1, length + 1)]


def sl_volume_sequence(m: int, p: int, length: int) -> List[int]:
    if m < 2:
        raise InvalidInputError(f"SL_m needs m >= 2, got {m}")
    if not isprime(p):
        raise InvalidInputError(f"{p} is not a prime")
    return [sl_order(m, p**k) for k in range(1, length + 1)]


def distinguish_nks(s: Rational, t: Rational, D: int, R: Rational, H: int) -> MatchingVerdict:
    """Matches the box spaces with N_k = 2^floor(ks) and 2^floor(kt).

    Equal exponents always match by the identity; different exponents are
    separated at the given budget.
    """
    s, t = Fraction(s), Fraction(t)
    verdict = ratio_bounded_matching(nks_sequence(s, H), nks_sequence(t, H), D, R, H)
    if s == t and not verdict.matched:
        raise VerificationFailure(f"N_k({s}) failed to match itself")
    return verdict


def distinguish_sl_volumes(
    m: int, p: int, n: int, q: int, D: int, R: Rational, H: int
) -> MatchingVerdict:
    """Matches the volumes |SL_m(Z/p^k)| against |SL_n(Z/q^k)|"""
    verdict = ratio_bounded_matching(
        sl_volume_sequence(m, p, H), sl_volume_sequence(n, q, H), D, R, H
    )
    if (m, p) == (n, q) and not verdict.matched:
        raise VerificationFailure(f"SL_{m}(Z/{p}^k) failed to match itself")
    return verdict


def load_sequence(text: str, length: int) -> Tuple[str, List[int]]:
    """Reads "nks:<s>", "sl:<m>,<p>" or a file of decimal integers, one per line.

    Returns
    -------
    (label, sequence)
    """
    if text.startswith("nks:"):
        s = parse_rational(text[len("nks:") :])
        return f"nks:{s}", nks_sequence(s, length)
    if text.startswith("sl:"):
        try:
            m, p = (int(x) for x in text[len("sl:") :].split(","))
        except ValueError as exp:
            raise InvalidInputError(f"expected sl:<m>,<p>, got {text!r}") from exp
        return f"sl:{m},{p}", sl_volume_sequence(m, p, length)
    if not os.path.exists(text):
        raise InvalidInputError(f"{text!r} is neither a built-in sequence nor a file")
    with open(text, encoding="UTF8") as f:
        try:
            values = [int(line) for line in f if line.strip()]
        except ValueError as exp:
            raise InvalidInputError(f"{text} must hold one decimal integer per line") from exp
    if len(values) < length:
        raise InvalidInputError(f"{text} has {len(values)} terms, {length} are needed")
    return os.path.basename(text), values[:length]


def matching_monotone(
    seqA: Sequence[int], seqB: Sequence[int], budgets: Sequence[Tuple[int, Rational]], H: int
) -> Optional[Tuple[int, Rational]]:
    """Returns the first budget that fails although a smaller one matched, or None"""
    matched = []
    for D, R in sorted(budgets, key=lambda b: (b[0], Fraction(b[1]))):
        verdict = ratio_bounded_matching(seqA, seqB, D, R, H)
        if not verdict.matched and any(d <= D and r <= Fraction(R) for d, r in matched):
            return D, R
        if verdict.matched:
            matched.append((D, Fraction(R)))
    return None
