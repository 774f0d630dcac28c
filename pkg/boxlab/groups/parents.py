"""The infinite parents Z, the SOL lattice Z^2 x| Z and the lamplighter group.

Their element arithmetic is exact, so that word balls and the membership of
an element in the k-th subgroup of a filtration can be computed without
passing to a quotient.
"""
import logging
from fractions import Fraction
from typing import Dict, List

from boxlab.arithmetics import ell, fib_matrix_power, nks, pisano
from boxlab.common.exceptions import InvalidInputError
from boxlab.common.typing import Element, Rational
from boxlab.finfield_poly import poly_mod, primitive_product
from boxlab.logic import BoxlabGroupLogic

logger = logging.getLogger(__name__)


class IntegerParent(BoxlabGroupLogic):
    """Z with S = {+1, -1}; the k-th subgroup is N_k(s) Z, N_k(s) = 2^floor(ks)"""

    name = "z"

    def __init__(self, s: Rational = 1):
        self.s = Fraction(s)

    def identity(self) -> Element:
        return (0,)

    def product(self, a: Element, b: Element) -> Element:
        return (a[0] + b[0],)

    def inverse(self, a: Element) -> Element:
        return (-a[0],)

    def generators(self) -> List[Element]:
        return [(1,), (-1,)]

    def modulus(self, k: int) -> int:
        return nks(self.s, k)

    def contains(self, g: Element, k: int) -> bool:
        return g[0] % self.modulus(k) == 0


class SolParent(BoxlabGroupLogic):
    """Z^2 x| Z with Z acting by powers of A = [[1, 1], [1, 0]].

    Elements are (x, y, n) for ((x, y), A^n); the k-th congruence subgroup
    Gamma(base^k) consists of the (v, n) with v = 0 and A^n = I modulo base^k.
    """

    name = "sol"

    def __init__(self, base: int = 5):
        if base < 2:
            raise InvalidInputError(f"congruence base must be >= 2, got {base}")
        self.base = base

    def identity(self) -> Element:
        return (0, 0, 0)

    def product(self, a: Element, b: Element) -> Element:
        (p, q), (r, s) = fib_matrix_power(a[2])
        return (a[0] + p * b[0] + q * b[1], a[1] + r * b[0] + s * b[1], a[2] + b[2])

    def inverse(self, a: Element) -> Element:
        (p, q), (r, s) = fib_matrix_power(-a[2])
        return (-(p * a[0] + q * a[1]), -(r * a[0] + s * a[1]), -a[2])

    def generators(self) -> List[Element]:
        return [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]

    def modulus(self, k: int) -> int:
        return self.base**k

    def contains(self, g: Element, k: int) -> bool:
        N = self.modulus(k)
        return g[0] % N == 0 and g[1] % N == 0 and g[2] % pisano(N) == 0


class LamplighterParent(BoxlabGroupLogic):
    """The lamplighter group as matrices [[X^n, P], [0, 1]] over F_2[X, X^-1].

    A Laurent polynomial X^low * mask is stored as (low, mask) with mask odd,
    or (0, 0) for zero. Elements are (low, mask, n).
    """

    name = "lamplighter"

    def identity(self) -> Element:
        return (0, 0, 0)

    @staticmethod
    def _normalize(low: int, mask: int):
        if mask == 0:
            return 0, 0
        shift = (mask & -mask).bit_length() - 1
        return low + shift, mask >> shift

    @classmethod
    def _add(cls, a_low: int, a_mask: int, b_low: int, b_mask: int):
        if a_mask == 0:
            return b_low, b_mask
        if b_mask == 0:
            return a_low, a_mask
        low = min(a_low, b_low)
        return cls._normalize(low, (a_mask << (a_low - low)) ^ (b_mask << (b_low - low)))

    def product(self, a: Element, b: Element) -> Element:
        # (P1, n1)(P2, n2) = (P1 + X^n1 P2, n1 + n2)
        low, mask = self._add(a[0], a[1], b[0] + a[2] if b[1] else 0, b[1])
        return (low, mask, a[2] + b[2])

    def inverse(self, a: Element) -> Element:
        # (P, n)^-1 = (X^-n P, -n) in characteristic 2
        return (a[0] - a[2] if a[1] else 0, a[1], -a[2])

    def generators(self) -> List[Element]:
        return [(0, 0, 1), (0, 0, -1), (0, 1, 0)]

    def contains(self, g: Element, k: int) -> bool:
        # X is a unit modulo P_1 ... P_k, so X^low * mask lies in I_k iff mask does
        return g[2] % ell(k) == 0 and poly_mod(g[1], primitive_product(k)) == 0


PARENTS: Dict[str, type] = {
    "z": IntegerParent,
    "sol": SolParent,
    "lamplighter": LamplighterParent,
}


def parent_membership(family: str, g: Element, k: int, **schedule) -> bool:
    """True iff the parent element g lies in the k-th filtration subgroup.

    Parameters
    ----------
    family: str
        one of "z", "sol", "lamplighter"
    g: Element
        exact parent element: (x,) for Z, (x, y, n) for SOL and
        (low, mask, n) for the lamplighter group
    k: int
        filtration index, k >= 1
    schedule:
        keyword arguments of the parent, s for Z and base for SOL

    Examples
    --------
    >>> parent_membership("sol", (5, 0, 0), 1)
    True
    """
    try:
        parent = PARENTS[family](**schedule)
    except KeyError:
        raise InvalidInputError(f"Unknown parent {family!r}, choose one of {list(PARENTS)}")
    return parent.contains(g, k)
