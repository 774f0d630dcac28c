from typing import List

from boxlab.arithmetics import fib_matrix_power, pisano
from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.common.exceptions import InvalidInputError
from boxlab.common.typing import Element, IntMatrix2
from boxlab.logic import QuotientGroupLogic


class SolQuotient(QuotientGroupLogic):
    """Gamma/Gamma(N) = (Z/NZ)^2 x| Z/delta(N)Z for the SOL lattice Z^2 x| Z.

    Z acts through powers of the Fibonacci matrix A = [[1, 1], [1, 0]] and
    delta(N) is the order of A modulo N. Elements are (x, y, j) for the
    pair ((x, y), A^j); the product is

        ((v1, j1)) * ((v2, j2)) = (v1 + A^j1 v2 mod N, j1 + j2 mod delta(N))
    """

    name = "sol"

    def __init__(self, modulus: int):
        if modulus < 2:
            raise InvalidInputError(f"SOL quotient needs N >= 2, got {modulus}")
        self.modulus = modulus
        self.delta = pisano(modulus)
        self.spec = GroupSpec.sol(modulus)
        self._powers = [fib_matrix_power(j, modulus) for j in range(self.delta)]

    def order(self) -> int:
        return self.modulus**2 * self.delta

    def identity(self) -> Element:
        return (0, 0, 0)

    def act(self, j: int, x: int, y: int):
        (a, b), (c, d) = self._powers[j % self.delta]
        return (a * x + b * y) % self.modulus, (c * x + d * y) % self.modulus

    def product(self, a: Element, b: Element) -> Element:
        x, y = self.act(a[2], b[0], b[1])
        return (
            (a[0] + x) % self.modulus,
            (a[1] + y) % self.modulus,
            (a[2] + b[2]) % self.delta,
        )

    def inverse(self, a: Element) -> Element:
        j = (-a[2]) % self.delta
        x, y = self.act(j, a[0], a[1])
        return ((-x) % self.modulus, (-y) % self.modulus, j)

    def generators(self) -> List[Element]:
        N, delta = self.modulus, self.delta
        return [
            (1 % N, 0, 0),
            ((-1) % N, 0, 0),
            (0, 1 % N, 0),
            (0, (-1) % N, 0),
            (0, 0, 1 % delta),
            (0, 0, (-1) % delta),
        ]

    def matrix_power(self, j: int) -> IntMatrix2:
        return self._powers[j % self.delta]

    def is_canonical(self, a: Element) -> bool:
        return (
            len(a) == 3
            and 0 <= a[0] < self.modulus
            and 0 <= a[1] < self.modulus
            and 0 <= a[2] < self.delta
        )

    def reduce(self, representative: tuple) -> Element:
        x, y, j = representative
        return (x % self.modulus, y % self.modulus, j % self.delta)

    def lift(self, a: Element) -> tuple:
        return a

