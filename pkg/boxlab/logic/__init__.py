from .base_controller import BoxSpaceControllerLogic
from .base_filtration import BoxlabFiltrationLogic
from .base_group import BoxlabGroupLogic, QuotientGroupLogic

__all__ = [
    "BoxlabFiltrationLogic",
    "BoxlabGroupLogic",
    "BoxSpaceControllerLogic",
    "QuotientGroupLogic",
]
