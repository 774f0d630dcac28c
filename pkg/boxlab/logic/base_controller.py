"""Abstract Base Class for boxlab box space controllers"""
from typing import Dict, List


class BoxSpaceControllerLogic:
    """Abstract base class for the box space controller logic"""

    def on_components_init(self) -> None:
        """Resolves the schedule into components and prepares the executor"""
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def on_components_submit(self) -> list:
        """Submits one build-and-measure task per component.

        Returns
        -------
        list
            futures supporting .result(); each resolves to a ComponentData
        """
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def on_components_receive(self, tasks: list) -> Dict[int, object]:
        """Collects the finished tasks.

        Parameters
        ----------
        tasks: list
            the futures returned by on_components_submit

        Returns
        -------
        Dict[int, ComponentData]
            components keyed by their index k, independent of completion order
        """
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def on_boxspace_assemble(self, results: dict):
        """Orders the components by k and places them at their offsets"""
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def on_boxspace_evaluate(self, boxspace) -> dict:
        """Runs the D_alpha and expansion evaluations on an assembled box space.

        Returns
        -------
        dict
            a report dictionary, for example:
                report = {
                    "dalpha": dict,
                    "estimate": dict,
                    "expansion": dict,
                    }
        """
        raise NotImplementedError("Abstract class method. Cannot be called directly.")

    def run(self) -> List[dict]:
        raise NotImplementedError("Abstract class method. Cannot be called directly.")
