import pytest

from boxlab.boxspace import LamplighterSchedule, SolCongruence, ZSchedule
from boxlab.cayley import CayleyGraph
from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.controllers import BoxSpaceController


@pytest.fixture
def cycle_graph():
    # C_12 with S = {+1, -1}
    return CayleyGraph.build(GroupSpec.cyclic(12))


@pytest.fixture
def sol_graph():
    return CayleyGraph.build(GroupSpec.sol(5))


@pytest.fixture
def heisenberg_graph():
    return CayleyGraph.build(GroupSpec.heisenberg(4))


@pytest.fixture
def z_controller():
    return BoxSpaceController(
        filtration=ZSchedule(1),
        count=4,
        alpha=1,
        K="1/4",
        executor_type="serial",
        max_subset_order=16,
    )


@pytest.fixture
def sol_controller():
    return BoxSpaceController(
        filtration=SolCongruence(5),
        count=1,
        alpha="1/3",
        executor_type="local",
    )


@pytest.fixture
def lamplighter_controller():
    return BoxSpaceController(
        filtration=LamplighterSchedule(),
        count=2,
        alpha="1/2",
        executor_type="serial",
        spectral=False,
    )
