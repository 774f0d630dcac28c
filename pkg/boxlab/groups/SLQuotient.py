from typing import List

from sympy import Matrix

from boxlab.arithmetics import sl_order
from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.common.exceptions import InvalidInputError
from boxlab.common.typing import Element
from boxlab.logic import QuotientGroupLogic


class SLQuotient(QuotientGroupLogic):
    """SL_m(Z/NZ) with elements stored as row-major tuples of m*m residues.

    The generating set is every elementary transvection e_ij(+1), e_ij(-1),
    i != j, in lexicographic order of (i, j).
    """

    name = "sl"

    def __init__(self, m: int, modulus: int):
        if m < 2 or modulus < 2:
            raise InvalidInputError(f"SL_m(Z/NZ) needs m, N >= 2, got ({m}, {modulus})")
        self.m = m
        self.modulus = modulus
        self.spec = GroupSpec.sl(m, modulus)

    def order(self) -> int:
        return sl_order(self.m, self.modulus)

    def identity(self) -> Element:
        m = self.m
        return tuple(1 if i == j else 0 for i in range(m) for j in range(m))

    def product(self, a: Element, b: Element) -> Element:
        m, N = self.m, self.modulus
        return tuple(
            sum(a[i * m + t] * b[t * m + j] for t in range(m)) % N
            for i in range(m)
            for j in range(m)
        )

    def inverse(self, a: Element) -> Element:
        inv = self.as_matrix(a).inv_mod(self.modulus)
        return tuple(int(x) % self.modulus for x in inv)

    def transvection(self, i: int, j: int, value: int) -> Element:
        entries = list(self.identity())
        entries[i * self.m + j] = value % self.modulus
        return tuple(entries)

    def generators(self) -> List[Element]:
        gens = []
        for i in range(self.m):
            for j in range(self.m):
                if i != j:
                    gens.append(self.transvection(i, j, 1))
                    gens.append(self.transvection(i, j, -1))
        return gens

    def as_matrix(self, a: Element) -> Matrix:
        return Matrix(self.m, self.m, list(a))

    def is_canonical(self, a: Element) -> bool:
        if len(a) != self.m * self.m or not all(0 <= x < self.modulus for x in a):
            return False
        return self.as_matrix(a).det() % self.modulus == 1 % self.modulus

    def reduce(self, representative: tuple) -> Element:
        return tuple(x % self.modulus for x in representative)

    def lift(self, a: Element) -> tuple:
        return a
