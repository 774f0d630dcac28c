from typing import List, Optional

from boxlab.common.boxlab_dataclasses import ZXZ2_FULL_FIBRE, GroupSpec
from boxlab.common.exceptions import InvalidInputError
from boxlab.common.typing import Element
from boxlab.logic import QuotientGroupLogic


class ZCrossZ2Quotient(QuotientGroupLogic):
    """(Z x Z/2)/M for the finite index subgroups M of Z x Z/2.

    eps in {0, 1} selects M = <(n, eps)> (quotient order 2n) and eps = None
    selects M = nZ x Z/2 (quotient order n). Elements are (x mod n, t) where
    (x, t) with x = qn + r reduces to (r, t + q eps).
    """

    name = "zxz2"

    def __init__(self, n: int, eps: Optional[int]):
        if n < 1:
            raise InvalidInputError(f"Z x Z/2 quotient needs n >= 1, got {n}")
        if eps not in (0, 1, None, ZXZ2_FULL_FIBRE):
            raise InvalidInputError(f"eps must be 0, 1 or None, got {eps}")
        self.n = n
        self.eps = None if eps == ZXZ2_FULL_FIBRE else eps
        self.spec = GroupSpec.zxz2(n, self.eps)

    def order(self) -> int:
        return self.n if self.eps is None else 2 * self.n

    def identity(self) -> Element:
        return (0, 0)

    def product(self, a: Element, b: Element) -> Element:
        return self.reduce((a[0] + b[0], a[1] + b[1]))

    def inverse(self, a: Element) -> Element:
        return self.reduce((-a[0], -a[1]))

    def generators(self) -> List[Element]:
        return [self.reduce((1, 0)), self.reduce((-1, 0)), self.reduce((0, 1))]

    def is_canonical(self, a: Element) -> bool:
        if len(a) != 2 or not 0 <= a[0] < self.n:
            return False
        return a[1] == 0 if self.eps is None else a[1] in (0, 1)

    def reduce(self, representative: tuple) -> Element:
        x, t = representative
        if self.eps is None:
            return (x % self.n, 0)
        q, r = divmod(x, self.n)
        return (r, (t + q * self.eps) % 2)

    def lift(self, a: Element) -> tuple:
        return a

    def cycle_projection(self, a: Element) -> int:
        """The image of a in Z/nZ = p(Z x Z/2) / p(M)"""
        return a[0]
