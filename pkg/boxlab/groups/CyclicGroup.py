from typing import List

from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.common.exceptions import InvalidInputError
from boxlab.common.typing import Element
from boxlab.logic import QuotientGroupLogic


class CyclicGroup(QuotientGroupLogic):
    """Z/nZ with elements (r,), 0 <= r < n, and generators {+1, -1}"""

    name = "cyclic"

    def __init__(self, n: int):
        if n < 1:
            raise InvalidInputError(f"cyclic group needs n >= 1, got {n}")
        self.n = n
        self.spec = GroupSpec.cyclic(n)

    def order(self) -> int:
        return self.n

    def identity(self) -> Element:
        return (0,)

    def product(self, a: Element, b: Element) -> Element:
        return ((a[0] + b[0]) % self.n,)

    def inverse(self, a: Element) -> Element:
        return ((-a[0]) % self.n,)

    def generators(self) -> List[Element]:
        return [(1 % self.n,), ((-1) % self.n,)]

    def is_canonical(self, a: Element) -> bool:
        return len(a) == 1 and 0 <= a[0] < self.n

    def reduce(self, representative: tuple) -> Element:
        return (representative[0] % self.n,)

    def lift(self, a: Element) -> tuple:
        return a
