from typing import List

import numpy as np

from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.common.exceptions import InvalidInputError
from boxlab.common.typing import Element, NDArray
from boxlab.logic import QuotientGroupLogic


class HeisenbergQuotient(QuotientGroupLogic):
    """Heis(Z/NZ), the upper unitriangular 3x3 matrices over Z/NZ.

    (a, b, c) stands for [[1, a, c], [0, 1, b], [0, 0, 1]], so that
    (a, b, c) * (a', b', c') = (a + a', b + b', c + c' + a b').
    """

    name = "heisenberg"

    def __init__(self, modulus: int):
        if modulus < 2:
            raise InvalidInputError(f"Heisenberg quotient needs N >= 2, got {modulus}")
        self.modulus = modulus
        self.spec = GroupSpec.heisenberg(modulus)

    def order(self) -> int:
        return self.modulus**3

    def identity(self) -> Element:
        return (0, 0, 0)

    def product(self, a: Element, b: Element) -> Element:
        N = self.modulus
        return ((a[0] + b[0]) % N, (a[1] + b[1]) % N, (a[2] + b[2] + a[0] * b[1]) % N)

    def inverse(self, a: Element) -> Element:
        N = self.modulus
        return ((-a[0]) % N, (-a[1]) % N, (a[0] * a[1] - a[2]) % N)

    def generators(self) -> List[Element]:
        N = self.modulus
        # e_12(+-1), e_23(+-1)
        return [(1, 0, 0), (N - 1, 0, 0), (0, 1, 0), (0, N - 1, 0)]

    def central(self, c: int) -> Element:
        """e_13(c), the central element with top right entry c"""
        return (0, 0, c % self.modulus)

    def as_matrix(self, a: Element) -> NDArray:
        return np.array([[1, a[0], a[2]], [0, 1, a[1]], [0, 0, 1]], dtype=np.int64)

    def is_canonical(self, a: Element) -> bool:
        return len(a) == 3 and all(0 <= x < self.modulus for x in a)

    def reduce(self, representative: tuple) -> Element:
        return tuple(x % self.modulus for x in representative)

    def lift(self, a: Element) -> tuple:
        return a
