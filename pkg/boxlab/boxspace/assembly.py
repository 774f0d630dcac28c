"""Box spaces: components of a filtration placed on a line.

Components X_k = Cay(G/N_k) sit at offsets o_k with o_1 = 0 and
o_k+1 = o_k + diam(X_k) + max(diam(X_k), diam(X_k+1)), so that
d(X_m, X_n) >= max(diam(X_m), diam(X_n)) for m != n.
"""
import logging
from dataclasses import dataclass, field
from itertools import islice
from typing import List, Optional, Sequence, Union

from boxlab.cayley import word_ball_layers
from boxlab.common.boxlab_dataclasses import ComponentData, GraphMetrics, GroupSpec
from boxlab.common.exceptions import BudgetExceededError, InvalidInputError, NestednessError
from boxlab.groups import group_for
from boxlab.logic import BoxlabFiltrationLogic

logger = logging.getLogger(__name__)

NESTEDNESS_SAMPLE = 4096


@dataclass
class BoxSpace:
    """The coarse disjoint union of the Cayley graphs of G/N_1, G/N_2, ..."""

    filtration: dict
    components: List[ComponentData] = field(default_factory=list)

    @property
    def metrics(self) -> List[GraphMetrics]:
        return [c.metrics for c in self.components]

    @property
    def offsets(self) -> List[int]:
        return [c.offset for c in self.components]

    def gap_rule_holds(self) -> bool:
        return check_gap_rule(self.offsets, [m.diameter for m in self.metrics])


def components(
    f: BoxlabFiltrationLogic, count: int, max_vertices: int = None
) -> List[GroupSpec]:
    """The first count quotient specs of a schedule, all within the vertex budget"""
    if count < 1:
        raise InvalidInputError(f"count must be >= 1, got {count}")
    specs = f.components(count)
    if max_vertices is not None:
        for k, spec in enumerate(specs, start=1):
            order = group_for(spec).order()
            if order > max_vertices:
                raise BudgetExceededError(
                    f"component {k} ({spec}) has {order} elements, above the budget {max_vertices}",
                    limit=max_vertices,
                    requested=order,
                    completed=(1, k - 1) if k > 1 else None,
                )
    return specs


def _diameters(metrics: Sequence[Union[GraphMetrics, int]]) -> List[int]:
    return [m.diameter if isinstance(m, GraphMetrics) else int(m) for m in metrics]


def coarse_union_offsets(metrics: Sequence[Union[GraphMetrics, int]]) -> List[int]:
    """Offsets of the components on a line (accepts GraphMetrics or bare diameters)"""
    diams = _diameters(metrics)
    if not diams:
        raise InvalidInputError("a box space needs at least one component")
    offsets = [0]
    for current, following in zip(diams, diams[1:]):
        offsets.append(offsets[-1] + current + max(current, following))
    return offsets


def check_gap_rule(offsets: Sequence[int], diameters: Sequence[int]) -> bool:
    """d(X_m, X_n) >= max(diam X_m, diam X_n) for all pairs, X_k = [o_k, o_k + diam_k]"""
    for m in range(len(offsets)):
        for n in range(m + 1, len(offsets)):
            gap = offsets[n] - (offsets[m] + diameters[m])
            if gap < max(diameters[m], diameters[n]):
                return False
    return True


def check_nested(
    f: BoxlabFiltrationLogic, k: int, sample_size: int = NESTEDNESS_SAMPLE
) -> None:
    """Raises NestednessError unless G/N_k+1 -> G/N_k is a homomorphism on generators.

    The projection must send the i-th generator to the i-th generator and
    commute with right multiplication by every generator on a BFS sample of
    G/N_k+1.
    """
    fine, coarse = group_for(f.spec(k + 1)), group_for(f.spec(k))
    fine_gens, coarse_gens = fine.generators(), coarse.generators()
    if len(fine_gens) != len(coarse_gens) or any(
        fine.project(s, coarse) != t for s, t in zip(fine_gens, coarse_gens)
    ):
        raise NestednessError(
            f"generators of {fine.spec} do not project onto those of {coarse.spec}", k=k
        )
    elements = (g for _, layer in word_ball_layers(fine, fine.order()) for g in layer)
    for g in islice(elements, sample_size):
        image = fine.project(g, coarse)
        for s, t in zip(fine_gens, coarse_gens):
            if fine.project(fine.product(g, s), coarse) != coarse.product(image, t):
                raise NestednessError(
                    f"projection {fine.spec} -> {coarse.spec} is not a homomorphism at {g} * {s}",
                    k=k,
                )


def injectivity_radii(
    f: BoxlabFiltrationLogic, count: int, radius: int, max_size: int = None
) -> Optional[List[Optional[int]]]:
    """r_k = least word length of a nontrivial element of N_k, None when above radius"""
    parent = f.parent()
    if parent is None:
        return None
    radii: List[Optional[int]] = [None] * count
    for r, layer in word_ball_layers(parent, radius, max_size):
        if r == 0:
            continue
        for k in range(1, count + 1):
            if radii[k - 1] is None and any(parent.contains(g, k) for g in layer):
                radii[k - 1] = r
    return radii


def verify_filtration(
    f: BoxlabFiltrationLogic, count: int, radius: int, max_size: int = None
) -> dict:
    """Nestedness, strictness and injectivity radius evidence for trivial intersection.

    Parameters
    ----------
    f: BoxlabFiltrationLogic
        the schedule
    count: int
        number of components checked
    radius: int
        radius R of the truncated parent BFS
    max_size: int
        element budget of that BFS

    Returns
    -------
    dict
        orders, strictness, per k injectivity radius (None meaning "> R") and
        whether the radii are nondecreasing
    """
    for k in range(1, count):
        check_nested(f, k)
    orders = [group_for(spec).order() for spec in f.components(count)]
    strict = all(a < b for a, b in zip(orders, orders[1:]))
    radii = injectivity_radii(f, count, radius, max_size)
    report = {
        "filtration": f.to_json(),
        "nested": True,
        "strict": strict,
        "orders": orders,
        "radius_checked": radius,
        "injectivity_radius": radii,
        "trivial_intersection_evidence": "not finitely checkable; radii are evidence only",
    }
    if radii is not None:
        found = [r if r is not None else radius + 1 for r in radii]
        report["nondecreasing"] = all(a <= b for a, b in zip(found, found[1:]))
        report["exceeds_radius"] = radii[-1] is None
    logger.debug(f"filtration {f.to_json()} verified on {count} components")
    return report
