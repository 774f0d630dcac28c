from typing import List

from boxlab.arithmetics import ell, first_primes
from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.common.exceptions import InvalidInputError
from boxlab.common.typing import Element
from boxlab.finfield_poly import QuotientRingF2, degree, poly_mod, primitive_product
from boxlab.logic import QuotientGroupLogic

MAX_LAMPLIGHTER_K = 4


class LamplighterQuotient(QuotientGroupLogic):
    """G/N_k = F_2[X]/(P_1 ... P_k) x| Z/ell_k Z for the lamplighter group.

    The lamplighter group is the group of matrices [[X^n, P], [0, 1]] over
    F_2[X, X^-1]. Elements of the quotient are (P, j), P a residue bitmask,
    with (P1, j1) * (P2, j2) = (P1 + X^j1 P2, j1 + j2). The generators are the
    images of diag(X, 1), diag(X^-1, 1) and [[1, 1], [0, 1]].
    """

    name = "lamplighter"

    def __init__(self, k: int):
        if not 1 <= k <= MAX_LAMPLIGHTER_K:
            raise InvalidInputError(
                f"lamplighter quotient needs 1 <= k <= {MAX_LAMPLIGHTER_K}, got {k}"
            )
        self.k = k
        self.modulus = primitive_product(k)
        self.ring = QuotientRingF2(self.modulus)
        self.ell = ell(k)
        self.spec = GroupSpec.lamplighter(k)
        self._x_powers = self.ring.x_powers(self.ell)

    def order(self) -> int:
        return self.ell * 2 ** sum(first_primes(self.k))

    def identity(self) -> Element:
        return (0, 0)

    def product(self, a: Element, b: Element) -> Element:
        P, j = b
        if P == 0:
            translated = 0
        elif P == 1:
            translated = self._x_powers[a[1]]
        else:
            translated = self.ring.mul(self._x_powers[a[1]], P)
        return (a[0] ^ translated, (a[1] + j) % self.ell)

    def inverse(self, a: Element) -> Element:
        # (P, j)^-1 = (-X^-j P, -j) and -1 = 1 in characteristic 2
        j = (-a[1]) % self.ell
        return (self.ring.mul(self._x_powers[j], a[0]), j)

    def generators(self) -> List[Element]:
        return [(0, 1 % self.ell), (0, (-1) % self.ell), (1, 0)]

    def is_canonical(self, a: Element) -> bool:
        return len(a) == 2 and 0 <= a[0] and degree(a[0]) < self.ring.degree and 0 <= a[1] < self.ell

    def reduce(self, representative: tuple) -> Element:
        P, j = representative
        return (poly_mod(P, self.modulus), j % self.ell)

    def lift(self, a: Element) -> tuple:
        return a
