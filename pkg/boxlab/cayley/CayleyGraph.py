import json
import logging
from collections import deque
from timeit import default_timer as timer
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from boxlab.common.boxlab_dataclasses import GroupSpec, default_max_vertices
from boxlab.common.exceptions import (
    BudgetExceededError,
    InvalidInputError,
    VerificationFailure,
)
from boxlab.common.typing import Element, Elements, NDArray
from boxlab.groups import group_for
from boxlab.logic import QuotientGroupLogic

logger = logging.getLogger(__name__)

EDGE_LIST_HEADER = "boxlab-graph v1"


def inverse_pairing(group: QuotientGroupLogic, gens: Sequence[Element]) -> List[int]:
    """Pairs every generator index with the index of its inverse.

    The pairing is an involution: a generator is matched to the first
    unmatched later or earlier copy of its inverse, and a self-inverse
    generator without such a copy is matched to itself.
    """
    partner = [None] * len(gens)
    for i, s in enumerate(gens):
        if partner[i] is not None:
            continue
        s_inv = group.inverse(s)
        candidates = [j for j in range(len(gens)) if j != i and partner[j] is None and gens[j] == s_inv]
        if candidates:
            partner[i], partner[candidates[0]] = candidates[0], i
        elif s_inv == s:
            partner[i] = i
        else:
            raise InvalidInputError(f"generating set is not symmetric: {s} has no inverse in it")
    return partner


class CayleyGraph:
    """The Cayley graph of a finite group, realized by breadth first search.

    Vertex 0 is the identity and vertices are numbered in BFS discovery order,
    scanning generators in their fixed order. ``adjacency[v, i]`` is the
    index of vertices[v] * gens[i]; loops and parallel edges are kept, so
    every vertex has exactly ``degree`` outgoing generator edges.

    spec: GroupSpec
        the group family and parameters

    vertices: Elements
        canonical elements in BFS order

    adjacency: NDArray
        (order, degree) int array of right multiplication by generators

    distances: NDArray
        BFS layer of every vertex, i.e. its word length

    inverse_index: List[int]
        inverse_index[i] is the generator paired with generator i
    """

    def __init__(
        self,
        spec: GroupSpec,
        vertices: Elements,
        adjacency: NDArray,
        distances: NDArray,
        parent: NDArray,
        parent_gen: NDArray,
        gens: Elements,
        inverse_index: List[int],
    ):
        self.spec = spec
        self.vertices = vertices
        self.adjacency = adjacency
        self.distances = distances
        self.parent = parent
        self.parent_gen = parent_gen
        self.gens = gens
        self.inverse_index = inverse_index
        self._index: Optional[Dict[Element, int]] = None

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def degree(self) -> int:
        return len(self.gens)

    @classmethod
    def build(
        cls,
        spec: GroupSpec,
        max_size: int = None,
        generators: Optional[Sequence[Element]] = None,
    ) -> "CayleyGraph":
        """BFS closure of the generating multiset from the identity.

        Parameters
        ----------
        spec: GroupSpec
            the finite group to realize
        max_size: int
            vertex budget, defaults to BOXLAB_MAX_VERTICES or 10**6
        generators: Sequence[Element]
            optional symmetric generating multiset replacing the family's own

        Returns
        -------
        CayleyGraph
            deterministic for identical arguments
        """
        group = group_for(spec)
        max_size = default_max_vertices() if max_size is None else max_size
        expected = group.order()
        if expected > max_size:
            raise BudgetExceededError(
                f"{spec} has {expected} elements, above the vertex budget {max_size}",
                limit=max_size,
                requested=expected,
            )
        gens = list(group.generators() if generators is None else generators)
        for s in gens:
            if not group.is_canonical(s):
                raise InvalidInputError(f"generator {s} is not a canonical element of {spec}")
        inverse_index = inverse_pairing(group, gens)

        start = timer()
        degree = len(gens)
        product = group.product
        index = {group.identity(): 0}
        vertices = [group.identity()]
        adjacency = np.empty((expected, degree), dtype=np.int64)
        distances = np.zeros(expected, dtype=np.int64)
        parent = np.full(expected, -1, dtype=np.int64)
        parent_gen = np.full(expected, -1, dtype=np.int64)
        queue = deque([0])
        while queue:
            v = queue.popleft()
            g = vertices[v]
            for i, s in enumerate(gens):
                h = product(g, s)
                w = index.get(h)
                if w is None:
                    w = len(vertices)
                    if w >= expected:
                        raise VerificationFailure(
                            f"BFS of {spec} exceeds the closed form order {expected}"
                        )
                    index[h] = w
                    vertices.append(h)
                    distances[w] = distances[v] + 1
                    parent[w] = v
                    parent_gen[w] = i
                    queue.append(w)
                adjacency[v, i] = w
        if len(vertices) != expected:
            raise VerificationFailure(
                f"generators of {spec} reach {len(vertices)} of {expected} elements"
            )
        logger.debug(f"built Cayley graph of {spec}: {expected} vertices in {timer() - start:.3f}s")
        graph = cls(spec, vertices, adjacency, distances, parent, parent_gen, gens, inverse_index)
        graph._index = index
        return graph

    def index_of(self, element: Element) -> int:
        if self._index is None:
            self._index = {g: v for v, g in enumerate(self.vertices)}
        try:
            return self._index[element]
        except KeyError:
            raise InvalidInputError(f"{element} is not a vertex of {self.spec}")

    def word_length(self, element: Element) -> int:
        return int(self.distances[self.index_of(element)])

    def edge_list(self) -> List[Tuple[int, int, int]]:
        """(u, v, g) triples, one per generator edge, u in vertex order"""
        return [
            (u, int(self.adjacency[u, i]), i)
            for u in range(self.order)
            for i in range(self.degree)
        ]

    def to_json_envelope(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "order": self.order,
            "degree": self.degree,
            "edges": [list(edge) for edge in self.edge_list()],
        }

    def write_edge_list(self, path: str) -> None:
        with open(path, "w", encoding="UTF8") as f:
            f.write(f"{EDGE_LIST_HEADER}\n")
            for u, v, g in self.edge_list():
                f.write(f"{u} {v} {g}\n")

    def write_json_envelope(self, path: str) -> None:
        with open(path, "w", encoding="UTF8") as f:
            json.dump(self.to_json_envelope(), f, sort_keys=True)
