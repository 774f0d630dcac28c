import json
import math

import numpy as np
import pytest

from boxlab.cayley import (
    EDGE_LIST_HEADER,
    CayleyGraph,
    all_pairs_diameter,
    ball_growth,
    central_distortion_heisenberg,
    cheeger_exact,
    compute_metrics,
    diameter,
    distance_spectrum,
    girth,
    inverse_pairing,
    spectral_gap,
    sweep_cut,
)
from boxlab.common.boxlab_dataclasses import GroupSpec
from boxlab.common.exceptions import (
    BudgetExceededError,
    InvalidInputError,
    OutOfRangeError,
    VerificationFailure,
)
from boxlab.groups import group_for


def test_build_orders_vertices_by_bfs(cycle_graph):
    """Vertex 0 is the identity and distances are BFS layers"""
    assert cycle_graph.order == 12
    assert cycle_graph.degree == 2
    assert cycle_graph.vertices[0] == (0,)
    assert list(cycle_graph.distances[:3]) == [0, 1, 1]
    assert cycle_graph.word_length((6,)) == 6


def test_build_is_deterministic():
    first = CayleyGraph.build(GroupSpec.sl(2, 3))
    second = CayleyGraph.build(GroupSpec.sl(2, 3))
    assert first.vertices == second.vertices
    assert np.array_equal(first.adjacency, second.adjacency)


def test_build_respects_vertex_budget():
    with pytest.raises(BudgetExceededError) as exc_info:
        CayleyGraph.build(GroupSpec.sol(5), max_size=100)
    assert exc_info.value.requested == 500


def test_build_with_non_generating_set():
    """{+2, -2} does not generate Z/12"""
    with pytest.raises(VerificationFailure):
        CayleyGraph.build(GroupSpec.cyclic(12), generators=[(2,), (10,)])


def test_non_symmetric_generators_are_rejected():
    with pytest.raises(InvalidInputError):
        CayleyGraph.build(GroupSpec.cyclic(12), generators=[(1,), (5,)])


def test_inverse_pairing_is_an_involution():
    group = group_for(GroupSpec.wreath("z4", 2))
    partner = inverse_pairing(group, group.generators())
    assert all(partner[partner[i]] == i for i in range(len(partner)))
    # cursor moves pair with each other, the Z/4 lamp 2 with itself
    assert partner[:2] == [1, 0]
    assert partner[3] == 3


def test_cycle_metrics(cycle_graph):
    assert diameter(cycle_graph) == 6
    assert girth(cycle_graph) == 12
    assert distance_spectrum(cycle_graph) == {0: 1, 1: 2, 2: 2, 3: 2, 4: 2, 5: 2, 6: 1}
    assert all_pairs_diameter(cycle_graph) == 6


def test_parallel_edges_give_girth_two():
    """In Z/2 both generators are the same element"""
    assert girth(CayleyGraph.build(GroupSpec.cyclic(2))) == 2


def test_loops_give_girth_one():
    """The Z/2 generator of Z x Z/2 dies in nZ x Z/2"""
    assert girth(CayleyGraph.build(GroupSpec.zxz2(5, None))) == 1


def test_girth_of_cycles():
    assert [girth(CayleyGraph.build(GroupSpec.cyclic(n))) for n in range(3, 51)] == list(range(3, 51))


def test_girth_of_sl_2_3():
    """The generator of order three closes a triangle"""
    assert girth(CayleyGraph.build(GroupSpec.sl(2, 3))) == 3



def test_spectral_gap_of_cycles():
    """lambda_1(C_n) = 1 - cos(2 pi / n) in both solvers"""
    for n in (5, 12, 40, 64):
        graph = CayleyGraph.build(GroupSpec.cyclic(n))
        expected = 1 - math.cos(2 * math.pi / n)
        assert spectral_gap(graph) == pytest.approx(expected, abs=1e-8)
    graph = CayleyGraph.build(GroupSpec.cyclic(40))
    assert spectral_gap(graph, dense=True) == pytest.approx(spectral_gap(graph, dense=False), abs=1e-8)


def test_spectral_gap_of_the_complete_graph():
    """Z/4 with all three nonzero generators is K_4, whose gap is 4/3"""
    k4 = CayleyGraph.build(GroupSpec.cyclic(4), generators=[(1,), (3,), (2,)])
    assert k4.degree == 3
    assert spectral_gap(k4) == pytest.approx(4 / 3, abs=1e-9)
    assert spectral_gap(k4, dense=True) == pytest.approx(4 / 3, abs=1e-9)



def test_exact_cheeger_of_a_cycle(cycle_graph):
    """Half of C_12 has two boundary edges"""
    assert cheeger_exact(cycle_graph) == pytest.approx(2 / 6)
    with pytest.raises(BudgetExceededError):
        cheeger_exact(cycle_graph, max_order=10)


@pytest.mark.parametrize("n, expected", [(4, 1.0), (6, 2 / 3)])
def test_exact_cheeger_of_small_cycles(n, expected):
    """A path of n/2 vertices cut out of C_n has two boundary edges"""
    assert cheeger_exact(CayleyGraph.build(GroupSpec.cyclic(n))) == pytest.approx(expected)



def test_sweep_cut_bounds_the_exact_constant(cycle_graph):
    vector = np.cos(2 * np.pi * np.arange(12) / 12)
    ratio, size = sweep_cut(cycle_graph, vector)
    assert ratio >= cheeger_exact(cycle_graph) - 1e-12
    assert 1 <= size <= 6


def test_compute_metrics_cheeger_sandwich(cycle_graph):
    """d lambda_1 / 2 <= h <= upper bound"""
    metrics = compute_metrics(cycle_graph)
    assert metrics.order == 12
    assert metrics.cheeger_lower <= metrics.cheeger_exact + 1e-9
    assert metrics.cheeger_exact <= metrics.cheeger_upper + 1e-9


def test_compute_metrics_without_spectrum(sol_graph):
    metrics = compute_metrics(sol_graph, spectral=False)
    assert metrics.lambda1 is None
    assert metrics.diameter == diameter(sol_graph)
    assert metrics.to_json()["order"] == 500


def test_edge_list_and_envelope(tmp_path, cycle_graph):
    edges = cycle_graph.edge_list()
    assert len(edges) == 24
    assert edges[0] == (0, cycle_graph.index_of((1,)), 0)
    path = tmp_path / "c12.txt"
    cycle_graph.write_edge_list(str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == EDGE_LIST_HEADER
    assert len(lines) == 25
    cycle_graph.write_json_envelope(str(tmp_path / "c12.json"))
    envelope = json.loads((tmp_path / "c12.json").read_text())
    assert envelope["spec"] == {"family": "cyclic", "params": [12]}
    assert len(envelope["edges"]) == 24


def test_index_of_unknown_element(cycle_graph):
    with pytest.raises(InvalidInputError):
        cycle_graph.index_of((13,))


def test_ball_growth():
    assert ball_growth(GroupSpec.cyclic(5), 3) == [1, 3, 5, 5]
    with pytest.raises(BudgetExceededError):
        ball_growth(GroupSpec.heisenberg(8), 10, max_size=20)


def test_central_distortion_heisenberg():
    """The central element of Heis(Z/2) is a commutator of length 4"""
    lengths = central_distortion_heisenberg(2)
    assert lengths[0] == (1, 4)
    assert lengths[1][1] >= lengths[0][1]
    with pytest.raises(OutOfRangeError):
        central_distortion_heisenberg(7)


def test_sol_diameter_is_the_all_pairs_diameter(sol_graph):
    assert diameter(sol_graph) == all_pairs_diameter(sol_graph)


ECCENTRICITY_SPECS = [
    GroupSpec.cyclic(64),
    GroupSpec.sl(2, 5),
    GroupSpec.sl(2, 8),
    GroupSpec.sl(3, 2),
    GroupSpec.wreath("z2", 4),
    GroupSpec.wreath("z4", 4),
    GroupSpec.wreath("z2xz2", 3),
    GroupSpec.lamplighter(2),
    GroupSpec.heisenberg(5),
    GroupSpec.heisenberg(8),
    GroupSpec.zxz2(50, 0),
    GroupSpec.zxz2(50, 1),
    GroupSpec.sol(5),
]


@pytest.mark.parametrize("spec", ECCENTRICITY_SPECS, ids=str)
def test_eccentricity_of_the_identity_is_the_diameter(spec):
    """Cayley graphs are vertex transitive, so one BFS finds the diameter"""
    graph = CayleyGraph.build(spec)
    assert graph.order <= 2000
    assert diameter(graph) == all_pairs_diameter(graph)
