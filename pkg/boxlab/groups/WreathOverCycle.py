from typing import Callable, Dict, List, Tuple

from boxlab.common.boxlab_dataclasses import LAMP_GROUPS, GroupSpec
from boxlab.common.exceptions import InvalidInputError
from boxlab.common.typing import Element
from boxlab.logic import QuotientGroupLogic

# lamp values are 0..|L|-1; Z/2 x Z/2 values are 2-bit masks added by XOR
LAMP_ARITHMETIC: Dict[str, Tuple[int, Callable[[int, int], int], Callable[[int], int]]] = {
    "z2": (2, lambda u, v: u ^ v, lambda u: u),
    "z4": (4, lambda u, v: (u + v) % 4, lambda u: (-u) % 4),
    "z2xz2": (4, lambda u, v: u ^ v, lambda u: u),
}


class WreathOverCycle(QuotientGroupLogic):
    """L wr Z/nZ for a lamp group L in {Z/2, Z/4, Z/2 x Z/2}.

    Elements are (l_0, ..., l_n-1, t): a lamp configuration and the cursor
    position t. The product is (f, t) * (g, u) = (f + g shifted by t, t + u),
    and the generators are the two cursor moves followed by one lamp
    generator per non-identity value of L, lit at the cursor.
    """

    def __init__(self, lamp: str, n: int):
        if lamp not in LAMP_GROUPS:
            raise InvalidInputError(f"Unknown lamp group {lamp!r}, choose one of {LAMP_GROUPS}")
        if n < 1:
            raise InvalidInputError(f"wreath product needs n >= 1, got {n}")
        self.lamp = lamp
        self.n = n
        self.lamp_order, self.lamp_add, self.lamp_neg = LAMP_ARITHMETIC[lamp]
        self.name = f"wreath-{lamp}"
        self.spec = GroupSpec.wreath(lamp, n)

    def order(self) -> int:
        return self.lamp_order**self.n * self.n

    def identity(self) -> Element:
        return (0,) * (self.n + 1)

    def product(self, a: Element, b: Element) -> Element:
        n, t, add = self.n, a[-1], self.lamp_add
        lamps = tuple(add(a[i], b[(i - t) % n]) for i in range(n))
        return lamps + ((t + b[-1]) % n,)

    def inverse(self, a: Element) -> Element:
        n, t = self.n, a[-1]
        lamps = tuple(self.lamp_neg(a[(i + t) % n]) for i in range(n))
        return lamps + ((-t) % n,)

    def shift(self, steps: int) -> Element:
        return (0,) * self.n + (steps % self.n,)

    def lamp_at_cursor(self, value: int) -> Element:
        return (value,) + (0,) * self.n

    def generators(self) -> List[Element]:
        gens = [self.shift(1), self.shift(-1)]
        gens.extend(self.lamp_at_cursor(v) for v in range(1, self.lamp_order))
        return gens

    def is_canonical(self, a: Element) -> bool:
        return (
            len(a) == self.n + 1
            and all(0 <= v < self.lamp_order for v in a[:-1])
            and 0 <= a[-1] < self.n
        )

    def reduce(self, representative: tuple) -> Element:
        """Folds a configuration over Z/n'Z (n dividing n') onto Z/nZ"""
        *lamps, t = representative
        folded = [0] * self.n
        for i, v in enumerate(lamps):
            folded[i % self.n] = self.lamp_add(folded[i % self.n], v % self.lamp_order)
        return tuple(folded) + (t % self.n,)

    def lift(self, a: Element) -> tuple:
        return a
