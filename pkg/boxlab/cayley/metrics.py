"""Coarse invariants of Cayley graphs: diameter, girth, growth and expansion.

Diameter and girth are read off a single BFS from the identity, which is
valid because Cayley graphs are vertex transitive. Expansion is measured by
the spectral gap lambda_1 of the normalized Laplacian I - A/d, the exact
Cheeger constant h = min |dA|/|A| over |A| <= n/2 on small graphs, and the
bounds d lambda_1 / 2 <= h <= min(d sqrt(2 lambda_1), sweep cut).
"""
import logging
import math
from typing import Dict, Iterator, List, Optional, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from boxlab.cayley.CayleyGraph import CayleyGraph
from boxlab.common.boxlab_dataclasses import GraphMetrics, GroupSpec, default_max_vertices
from boxlab.common.exceptions import (
    BudgetExceededError,
    ConvergenceError,
    InvalidInputError,
    OutOfRangeError,
)
from boxlab.common.typing import Element, NDArray
from boxlab.groups import HeisenbergQuotient, group_for
from boxlab.logic import BoxlabGroupLogic

logger = logging.getLogger(__name__)

DENSE_ORDER = 32
MAX_SUBSET_ORDER = 22
MAX_ALL_PAIRS_ORDER = 5000
MAX_HEISENBERG_K = 6


def diameter(g: CayleyGraph) -> int:
    """Eccentricity of the identity, equal to the diameter by vertex transitivity"""
    return int(g.distances.max())


def girth(g: CayleyGraph) -> Optional[int]:
    """Length of the shortest cycle through the identity, None if acyclic.

    Every half-edge that is not a BFS tree edge closes a cycle of length at
    most d(u) + d(w) + 1, and the minimum over them is attained on a
    shortest cycle through the root. Loops give 1 and parallel edges give 2.
    """
    n, d = g.adjacency.shape
    u = np.repeat(np.arange(n), d)
    i = np.tile(np.arange(d), n)
    w = g.adjacency.ravel()
    inv = np.asarray(g.inverse_index)
    tree = (g.parent[w] == u) & (g.parent_gen[w] == i)
    tree |= (g.parent[u] == w) & (g.parent_gen[u] == inv[i])
    if tree.all():
        return None
    lengths = g.distances[u] + g.distances[w] + 1
    return int(lengths[~tree].min())


def adjacency_matrix(g: CayleyGraph) -> csr_matrix:
    """Sparse adjacency with A[u, v] = number of generators s with u s = v"""
    n, d = g.adjacency.shape
    rows = np.repeat(np.arange(n), d)
    data = np.ones(n * d, dtype=np.float64)
    return csr_matrix((data, (rows, g.adjacency.ravel())), shape=(n, n))


def distance_spectrum(g: CayleyGraph) -> Dict[int, int]:
    """Number of vertices at each distance from the identity"""
    counts = np.bincount(g.distances)
    return {r: int(c) for r, c in enumerate(counts)}


def all_pairs_diameter(g: CayleyGraph) -> int:
    if g.order > MAX_ALL_PAIRS_ORDER:
        raise BudgetExceededError(
            f"all pairs BFS is limited to {MAX_ALL_PAIRS_ORDER} vertices",
            limit=MAX_ALL_PAIRS_ORDER,
            requested=g.order,
        )
    dist = shortest_path(adjacency_matrix(g), unweighted=True, directed=False)
    return int(dist.max())


def _second_eigenpair(g: CayleyGraph, tol: float, dense: Optional[bool]) -> Tuple[float, NDArray]:
    n, d = g.order, g.degree
    if n == 1:
        return 0.0, np.zeros(1)
    A = adjacency_matrix(g)
    if dense or (dense is None and n <= DENSE_ORDER):
        values, vectors = np.linalg.eigh(A.toarray() / d)
        return float(1.0 - values[-2]), vectors[:, -2]

    # top eigenpair of P (A/d + 2I) P with P the projection orthogonal to constants;
    # the constant vector maps to 0 and the spectrum on its complement lies in [1, 3]
    def matvec(x):
        x = np.ravel(x)
        y = x - x.mean()
        z = A @ y / d + 2.0 * y
        return z - z.mean()

    operator = LinearOperator((n, n), matvec=matvec, dtype=np.float64)
    v0 = np.full(n, -1.0 / n)
    v0[0] += 1.0
    try:
        values, vectors = eigsh(operator, k=1, which="LA", v0=v0, tol=tol * 1e-3)
    except ArpackNoConvergence as exp:
        residual = float("nan")
        if len(exp.eigenvalues):
            x = exp.eigenvectors[:, 0]
            residual = float(np.linalg.norm(matvec(x) - exp.eigenvalues[0] * x))
        raise ConvergenceError(
            f"eigensolver did not converge on {g.spec}", residual=residual
        ) from exp
    return float(3.0 - values[0]), vectors[:, 0]


def spectral_gap(g: CayleyGraph, tol: float = 1e-9, dense: Optional[bool] = None) -> float:
    """lambda_1, the second smallest eigenvalue of the normalized Laplacian.

    Parameters
    ----------
    g: CayleyGraph
        connected Cayley graph; loops and multiplicities count towards the degree
    tol: float
        absolute tolerance on lambda_1
    dense: bool
        force (True) or forbid (False) the dense eigendecomposition; by default
        graphs with at most DENSE_ORDER vertices are solved densely and larger
        ones by Lanczos iteration from a fixed start vector

    Returns
    -------
    float
        lambda_1, 0.0 for the one vertex graph
    """
    return _second_eigenpair(g, tol, dense)[0]


def sweep_cut(g: CayleyGraph, vector: NDArray) -> Tuple[float, int]:
    """Best |dA|/|A| over prefixes and suffixes (|A| <= n/2) of the order of vector.

    Returns
    -------
    (ratio, size): the best ratio and the size of the set attaining it
    """
    n, d = g.adjacency.shape
    loops = (g.adjacency == np.arange(n)[:, None]).sum(axis=1)
    best, best_size = math.inf, 0
    order = np.argsort(vector, kind="stable")
    for sweep in (order, order[::-1]):
        in_set = np.zeros(n, dtype=bool)
        boundary = 0
        for size, v in enumerate(sweep[: n // 2], start=1):
            to_set = int(in_set[g.adjacency[v]].sum())
            boundary += d - int(loops[v]) - 2 * to_set
            in_set[v] = True
            if boundary / size < best:
                best, best_size = boundary / size, size
    return best, best_size


def cheeger_exact(g: CayleyGraph, max_order: int = MAX_SUBSET_ORDER) -> float:
    """min |dA|/|A| over nonempty A with |A| <= n/2, by exhaustive search.

    By vertex transitivity only the 2^(n-1) sets containing the identity
    need to be scanned; they are evaluated together as bitmasks.
    """
    n = g.order
    if n > max_order:
        raise BudgetExceededError(
            f"exact Cheeger constant is limited to {max_order} vertices, {g.spec} has {n}",
            limit=max_order,
            requested=n,
        )
    if n < 2:
        raise InvalidInputError("the Cheeger constant needs at least two vertices")
    masks = np.arange(1 << (n - 1), dtype=np.int64)

    def member(v: int) -> NDArray:
        if v == 0:
            return np.ones_like(masks)
        return (masks >> (v - 1)) & 1

    sizes = np.ones_like(masks)
    for v in range(1, n):
        sizes += member(v)
    boundary = np.zeros_like(masks)
    for u, w, _ in g.edge_list():
        # each undirected non-loop edge is counted from its smaller endpoint
        if u < w:
            boundary += member(u) ^ member(w)
    admissible = sizes <= n // 2
    return float((boundary[admissible] / sizes[admissible]).min())


def compute_metrics(
    g: CayleyGraph,
    max_subset_order: int = MAX_SUBSET_ORDER,
    tol: float = 1e-9,
    spectral: bool = True,
) -> GraphMetrics:
    """Diameter, girth, lambda_1 and Cheeger bounds of one Cayley graph"""
    metrics = GraphMetrics(
        order=g.order, degree=g.degree, diameter=diameter(g), girth=girth(g)
    )
    if spectral and g.order > 1:
        lambda1, vector = _second_eigenpair(g, tol, None)
        metrics.lambda1 = lambda1
        metrics.cheeger_lower = g.degree * lambda1 / 2
        metrics.cheeger_upper = min(
            g.degree * math.sqrt(2 * max(lambda1, 0.0)), sweep_cut(g, vector)[0]
        )
        if g.order <= max_subset_order:
            metrics.cheeger_exact = cheeger_exact(g, max_subset_order)
    return metrics


def word_ball_layers(
    group: BoxlabGroupLogic, radius: int, max_size: int = None
) -> Iterator[Tuple[int, List[Element]]]:
    """Yields (r, elements of word length exactly r) for r = 0 .. radius"""
    max_size = default_max_vertices() if max_size is None else max_size
    gens = group.generators()
    layer = [group.identity()]
    seen = {group.identity()}
    yield 0, layer
    for r in range(1, radius + 1):
        next_layer = []
        for g in layer:
            for s in gens:
                h = group.product(g, s)
                if h not in seen:
                    seen.add(h)
                    next_layer.append(h)
        if len(seen) > max_size:
            raise BudgetExceededError(
                f"ball of radius {r} has more than {max_size} elements",
                limit=max_size,
                requested=len(seen),
                completed=(0, r - 1),
            )
        layer = next_layer
        yield r, layer


def ball_growth(
    group: Union[GroupSpec, BoxlabGroupLogic], radius: int, max_size: int = None
) -> List[int]:
    """[|B(0)|, ..., |B(R)|], cumulative ball sizes around the identity.

    Examples
    --------
    >>> ball_growth(GroupSpec.cyclic(5), 3)
    [1, 3, 5, 5]
    """
    if isinstance(group, GroupSpec):
        group = group_for(group)
    sizes, total = [], 0
    for _, layer in word_ball_layers(group, radius, max_size):
        total += len(layer)
        sizes.append(total)
    return sizes


def central_distortion_heisenberg(k: int, max_size: int = None) -> List[Tuple[int, int]]:
    """Word length of e_13(2^(j-1)) in Heis(Z/2^j Z) for j = 1 .. k"""
    if not 1 <= k <= MAX_HEISENBERG_K:
        raise OutOfRangeError(f"k must lie in [1, {MAX_HEISENBERG_K}], got {k}")
    lengths = []
    for j in range(1, k + 1):
        group = HeisenbergQuotient(2**j)
        graph = CayleyGraph.build(group.spec, max_size=max_size)
        lengths.append((j, graph.word_length(group.central(2 ** (j - 1)))))
        logger.debug(f"Heis(Z/{2 ** j}): central element has word length {lengths[-1][1]}")
    return lengths
