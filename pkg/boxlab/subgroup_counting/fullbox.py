"""Retraction of the quotients of Z x Z/2 onto cycles.

Every finite quotient G/M of Z x Z/2 retracts onto the cycle C_n, n the
index of p(M) in Z, by forgetting the Z/2 coordinate. The retraction is a
quasi-isometry with a constant that does not depend on M; this module
measures the constant exhaustively over all quotients up to a given order.
"""
import logging
from typing import List, Tuple

import numpy as np
from scipy.sparse.csgraph import shortest_path

from boxlab.cayley import CayleyGraph, adjacency_matrix
from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.common.exceptions import BudgetExceededError, InvalidInputError
from boxlab.common.typing import NDArray
from boxlab.groups import group_for

from .census import census_z_cross_z2

logger = logging.getLogger(__name__)

FULLBOX_MAX_INDEX = 200


def quotients_up_to(max_order: int) -> List[GroupSpec]:
    """Every finite quotient of Z x Z/2 of order <= max_order, by order then eps"""
    specs = []
    for order in range(1, max_order + 1):
        specs.append(GroupSpec.zxz2(order, None))
        if order % 2 == 0:
            specs.extend(GroupSpec.zxz2(order // 2, eps) for eps in (0, 1))
    return specs


def quasi_isometry_constant(d_source: NDArray, d_target: NDArray) -> int:
    """Least integer A >= 1 with d/A - A <= d' <= A d + A on every pair"""
    A = 1
    while True:
        lower = d_source <= A * (d_target + A)
        upper = d_target <= A * (d_source + 1)
        if lower.all() and upper.all():
            return A
        A += 1


def retraction_distances(graph: CayleyGraph) -> Tuple[NDArray, NDArray, int]:
    """All pairs distances in the quotient and between the cycle images"""
    group = group_for(graph.spec)
    n = group.n
    d_source = shortest_path(adjacency_matrix(graph), unweighted=True, directed=False)
    image = np.array([group.cycle_projection(v) for v in graph.vertices], dtype=np.int64)
    gap = np.abs(image[:, None] - image[None, :]) % n
    d_target = np.minimum(gap, n - gap)
    return d_source, d_target, n


def fullbox_cycle_retraction(max_index: int = FULLBOX_MAX_INDEX) -> dict:
    """Measures the retraction constant of every quotient of order <= max_index.

    Returns
    -------
    dict
        {"quotients": [{"n", "eps", "order", "A", "additive_gap"}], "max_A",
        "attained_at_order", "K"} where additive_gap is max |d - d'| and K is
        max K_n over n <= max_index
    """
    if max_index < 1:
        raise InvalidInputError(f"max index must be >= 1, got {max_index}")
    if max_index > FULLBOX_MAX_INDEX:
        raise BudgetExceededError(
            f"the retraction survey is limited to quotients of order {FULLBOX_MAX_INDEX}",
            limit=FULLBOX_MAX_INDEX,
            requested=max_index,
        )
    rows = []
    for spec in quotients_up_to(max_index):
        graph = CayleyGraph.build(spec)
        d_source, d_target, n = retraction_distances(graph)
        A = quasi_isometry_constant(d_source, d_target)
        n, eps = spec.params
        rows.append(
            {
                "n": n,
                "eps": "full" if group_for(spec).eps is None else eps,
                "order": graph.order,
                "A": A,
                "additive_gap": int(np.abs(d_source - d_target).max()),
            }
        )
    max_A = max(row["A"] for row in rows)
    attained = min(row["order"] for row in rows if row["A"] == max_A)
    _, K = census_z_cross_z2(max_index)
    logger.info(f"retraction constant {max_A} over {len(rows)} quotients, first at order {attained}")
    return {
        "quotients": rows,
        "max_A": max_A,
        "attained_at_order": attained,
        "K": max(K.values()),
    }
