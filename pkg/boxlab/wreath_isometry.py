"""Isomorphism between the Cayley graphs of (Z/4) wr Z/n and (Z/2 x Z/2) wr Z/n.

Both groups are generated by the two cursor moves and the three
non-identity lamps lit at the cursor. Any bijection b of lamp values,
applied at every position, carries the edge g -> g s of one graph to an
edge of the other: lighting v at the cursor changes the lamp there from
l to l + v, and b(l + v) differs from b(l) by a non-identity lamp. The
check below verifies this edge by edge, streaming over the elements of the
(Z/4) side so that only the images are held in memory.
"""
import logging
from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable, List, Optional, Tuple

import numpy as np

from boxlab.cayley import CayleyGraph, distance_spectrum
from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.common.exceptions import BudgetExceededError, InvalidInputError
from boxlab.common.typing import Element
from boxlab.groups import WreathOverCycle

logger = logging.getLogger(__name__)

ISOMETRY_MAX_N = 8

ElementMap = Callable[[Element], Element]


@dataclass(frozen=True)
class LampBijection:
    """table[v] is the Z/2 x Z/2 lamp (a 2-bit mask) assigned to v in Z/4.

    The identity lamp must go to the identity lamp, so the induced map sends
    the identity element to the identity element. ``pointed=False`` lifts
    that requirement: such a bijection still induces a graph isomorphism,
    only not a base point preserving one. The map that fails the edge check
    is :func:`twisted_map`, not an unpointed bijection.
    """

    table: Tuple[int, int, int, int]
    pointed: bool = True

    def __post_init__(self):
        if sorted(self.table) != [0, 1, 2, 3]:
            raise InvalidInputError(f"{self.table} is not a bijection of lamp values")
        if self.pointed and not self.fixes_identity:
            raise InvalidInputError(
                f"{self.table} sends the identity lamp to {self.table[0]}; pass pointed=False to allow it"
            )


    def __call__(self, v: int) -> int:
        return self.table[v]

    @property
    def fixes_identity(self) -> bool:
        return self.table[0] == 0

    def inverse(self) -> Tuple[int, int, int, int]:
        inv = [0] * 4
        for v, w in enumerate(self.table):
            inv[w] = v
        return tuple(inv)


def all_identity_fixing_bijections() -> List[LampBijection]:
    return [LampBijection((0,) + p) for p in permutations((1, 2, 3))]


def induced_map(b: LampBijection, n: int, g: Element) -> Element:
    """Applies b to every lamp of g and keeps the cursor"""
    if len(g) != n + 1:
        raise InvalidInputError(f"{g} is not an element of a wreath product over Z/{n}")
    return tuple(b(v) for v in g[:-1]) + (g[-1],)


def twisted_map(b: LampBijection, other: LampBijection, n: int) -> ElementMap:
    """Uses ``other`` on the lamps while the cursor sits at 0 and b elsewhere.

    Each fibre over a cursor position is mapped bijectively, so the map is
    a bijection; moving the cursor off 0 changes which relabelling applies,
    so shift edges are not preserved when b and other differ.
    """

    def mapping(g: Element) -> Element:
        return induced_map(other if g[-1] == 0 else b, n, g)

    return mapping


def _encode(g: Element, n: int) -> int:
    code = g[-1]
    for v in g[:-1]:
        code = 4 * code + v
    return code


def verify_isomorphism(b: LampBijection, n: int, mapping: Optional[ElementMap] = None) -> dict:
    """Checks edge by edge that the element map is a Cayley graph isomorphism.

    Parameters
    ----------
    b: LampBijection
        induces the map when ``mapping`` is None
    n: int
        cycle length, 1 <= n <= 8
    mapping: ElementMap
        an arbitrary map from the Z/4 side to the Z/2 x Z/2 side

    Returns
    -------
    dict
        {"n", "isomorphic", "bijective", "fixes_identity", "elements",
        "edges_checked", "witness"}; the witness is the first edge whose image
        is not an edge, or None
    """
    if not 1 <= n <= ISOMETRY_MAX_N:
        raise BudgetExceededError(
            f"the edge check is limited to n <= {ISOMETRY_MAX_N}, got {n}",
            limit=ISOMETRY_MAX_N,
            requested=n,
        )
    source = WreathOverCycle("z4", n)
    target = WreathOverCycle("z2xz2", n)
    if mapping is None:
        mapping = lambda g: induced_map(b, n, g)  # noqa: E731
    source_gens = source.generators()
    # for n <= 2 the cursor moves coincide, so generators are matched as a multiset
    target_gens = target.generators()
    order = source.order()
    hit = np.zeros(order, dtype=bool)
    bijective = True
    edges = 0
    witness = None
    for lamps in product(range(4), repeat=n):
        for t in range(n):
            g = lamps + (t,)
            image = mapping(g)
            if not target.is_canonical(image):
                raise InvalidInputError(f"{image} is not an element of {target.spec}")
            code = _encode(image, n)
            if hit[code]:
                bijective = False
            hit[code] = True
            image_inv = target.inverse(image)
            used = set()
            for s in source_gens:
                edges += 1
                step = target.product(image_inv, mapping(source.product(g, s)))
                j = next(
                    (i for i, u in enumerate(target_gens) if u == step and i not in used), None
                )
                if j is None:
                    if witness is None:
                        witness = {
                            "element": list(g),
                            "generator": list(s),
                            "image": list(image),
                            "image_of_neighbour": list(mapping(source.product(g, s))),
                        }
                        logger.debug(f"edge {g} -> {g} * {s} is not carried to an edge")
                    continue
                used.add(j)
    bijective = bijective and bool(hit.all())
    identity = source.identity()
    return {
        "n": n,
        "isomorphic": bijective and witness is None,
        "bijective": bijective,
        "fixes_identity": mapping(identity) == target.identity(),
        "elements": order,
        "edges_checked": edges,
        "witness": witness,
    }


def distance_spectra_agree(n: int) -> bool:
    """Compares the numbers of elements at each word length on both sides"""
    first = CayleyGraph.build(GroupSpec.wreath("z4", n))
    second = CayleyGraph.build(GroupSpec.wreath("z2xz2", n))
    return distance_spectrum(first) == distance_spectrum(second)
