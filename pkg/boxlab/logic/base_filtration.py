"""Abstract Base Class for boxlab filtrations"""
from typing import List, Optional

from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.logic.base_group import BoxlabGroupLogic


class BoxlabFiltrationLogic:
    """A decreasing sequence of finite index normal subgroups N_1 > N_2 > ...

    A filtration is described by its quotients G/N_k, k = 1, 2, ...
    """

    name: str = None

    def spec(self, k: int) -> GroupSpec:
        """Returns the GroupSpec of the k-th quotient G/N_k (k >= 1)"""
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def parent(self) -> Optional[BoxlabGroupLogic]:
        """Returns the infinite parent group with exact arithmetic, or None.

        Returns
        -------
        BoxlabGroupLogic or None
            the parent must implement ``contains(g, k)``, the membership test
            of g in N_k
        """
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def components(self, count: int) -> List[GroupSpec]:
        return [self.spec(k) for k in range(1, count + 1)]

    def to_json(self) -> dict:
        raise NotImplementedError("Abstract class method. Cannot be called directly.")
