import csv
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from boxlab.common.exceptions import BudgetExceededError
from boxlab.utils import SerialExecutor


def test_init_executor_from_type(z_controller):
    """BoxSpaceController.on_components_init() selects the executor
    named by executor_type when no executor is provided"""
    z_controller.executor = None
    z_controller.executor_type = "serial"

    z_controller.on_components_init()

    assert z_controller.executor == SerialExecutor


def test_init_executor_unknown_type(z_controller):
    """BoxSpaceController.on_components_init() falls back to the local
    executor for an unknown executor_type"""
    z_controller.executor = None
    z_controller.executor_type = "cluster"

    z_controller.on_components_init()

    assert z_controller.executor == ThreadPoolExecutor


def test_init_executor_provided_executor(z_controller):
    """BoxSpaceController.on_components_init() keeps a custom executor"""
    z_controller.executor = ThreadPoolExecutor
    z_controller.executor_type = "serial"

    z_controller.on_components_init()

    assert z_controller.executor == ThreadPoolExecutor


def test_init_components(z_controller):
    """BoxSpaceController.on_components_init() lists the quotient specs"""
    z_controller.on_components_init()
    assert [spec.params for spec in z_controller.specs] == [(2,), (4,), (8,), (16,)]


def test_init_components_budget(z_controller):
    """BoxSpaceController.on_components_init() refuses components above the budget"""
    z_controller.max_vertices = 10
    with pytest.raises(BudgetExceededError):
        z_controller.on_components_init()


def test_constants_are_exact(z_controller):
    assert z_controller.alpha == Fraction(1)
    assert z_controller.K == Fraction(1, 4)


def test_run_cycles(z_controller):
    """The box space of Z over 2^k Z has D_1 with K = 1/4"""
    result = z_controller.run()

    assert [row["order"] for row in result["components"]] == [2, 4, 8, 16]
    assert [row["diameter"] for row in result["components"]] == [1, 2, 4, 8]
    assert result["offsets"] == [0, 3, 9, 21]
    evaluation = result["evaluation"]
    assert evaluation["gap_rule"]
    assert evaluation["dalpha"]["verdict"]
    assert evaluation["dalpha"]["K_source"] == "given"
    assert evaluation["estimate"]["alpha_hat"] == pytest.approx(1.0)
    assert evaluation["expansion"]["verdict"] == "expansion fails empirically"
    assert set(result["timing"]) == {"1", "2", "3", "4"}


def test_run_writes_csv(tmp_path, z_controller):
    path = tmp_path / "components.csv"
    z_controller.csv_filename = str(path)

    z_controller.run()

    with open(path, encoding="UTF8") as f:
        rows = list(csv.DictReader(f))
    assert [row["k"] for row in rows] == ["1", "2", "3", "4"]
    assert rows[-1]["diam_over_order_alpha"] == "0.5"


def test_run_lamplighter_measured_constant(lamplighter_controller):
    """Without K the measured constant is used and passes by construction"""
    result = lamplighter_controller.run()

    assert [row["order"] for row in result["components"]] == [12, 672]
    dalpha = result["evaluation"]["dalpha"]
    assert dalpha["K_source"] == "measured"
    assert dalpha["verdict"]
    assert result["evaluation"]["expansion"] is None
    assert result["evaluation"]["estimate"]["uncertain"]


def test_run_single_component(sol_controller):
    """One component cannot support an alpha estimate"""
    result = sol_controller.run()

    assert result["components"][0]["order"] == 500
    assert "error" in result["evaluation"]["estimate"]
    assert result["offsets"] == [0]
