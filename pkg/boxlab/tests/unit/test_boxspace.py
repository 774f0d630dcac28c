from fractions import Fraction

import pytest

from boxlab.boxspace import (
    LamplighterSchedule,
    SLCongruence,
    SolCongruence,
    SolFibonacciSchedule,
    ZCrossZ2Schedule,
    ZSchedule,
    check_gap_rule,
    check_nested,
    coarse_union_offsets,
    components,
    dalpha_check,
    dalpha_estimate,
    diameter_band,
    expansion_report,
    injectivity_radii,
    measured_constant,
    parse_schedule,
    verify_filtration,
)
from boxlab.common.boxlab_dataclasses import DAlphaParams, GraphMetrics, GroupSpec
from boxlab.common.exceptions import (
    BudgetExceededError,
    EstimationError,
    InvalidInputError,
    NestednessError,
)


def _metrics(pairs):
    return [GraphMetrics(order=order, diameter=diam) for order, diam in pairs]


def test_parse_schedule():
    """Every selector form maps onto its filtration"""
    assert parse_schedule("sol:5^k").spec(2) == GroupSpec.sol(25)
    assert parse_schedule("solfib:5,7").spec(2) == GroupSpec.sol(65)
    assert parse_schedule("lamplighter").spec(3) == GroupSpec.lamplighter(3)
    assert parse_schedule("z:3/2").spec(3) == GroupSpec.cyclic(16)
    assert parse_schedule("sl:2,3^k").spec(2) == GroupSpec.sl(2, 9)
    assert parse_schedule("sl:3,s=2").spec(1) == GroupSpec.sl(3, 4)
    assert parse_schedule("zxz2:full").spec(2) == GroupSpec.zxz2(4, None)


@pytest.mark.parametrize("text", ["sol:k", "z:x", "sl:2", "free", "z:1/0"])
def test_parse_schedule_rejects_malformed_selectors(text):
    with pytest.raises(InvalidInputError):
        parse_schedule(text)


def test_schedule_json():
    assert SolCongruence(5).to_json() == {"schedule": "sol", "base": 5}
    assert ZSchedule("3/2").to_json() == {"schedule": "z", "s": "3/2"}
    assert SLCongruence(2, p=3).to_json() == {"schedule": "sl", "m": 2, "p": 3}
    with pytest.raises(InvalidInputError):
        SLCongruence(2)


def test_fibonacci_schedule_is_finite():
    f = SolFibonacciSchedule([5, 7])
    assert f.modulus(2) == 65
    with pytest.raises(InvalidInputError):
        f.modulus(3)


def test_components_budget():
    """The first component above the budget stops the schedule"""
    assert components(LamplighterSchedule(), 2, max_vertices=1000) == [
        GroupSpec.lamplighter(1),
        GroupSpec.lamplighter(2),
    ]
    with pytest.raises(BudgetExceededError) as exc_info:
        components(SolCongruence(5), 2, max_vertices=1000)
    assert exc_info.value.completed == (1, 1)
    with pytest.raises(InvalidInputError):
        components(SolCongruence(5), 0)


def test_coarse_union_offsets():
    """o_k+1 = o_k + diam_k + max(diam_k, diam_k+1)"""
    assert coarse_union_offsets([2, 5, 1]) == [0, 7, 17]
    assert coarse_union_offsets(_metrics([(4, 2)])) == [0]
    with pytest.raises(InvalidInputError):
        coarse_union_offsets([])


def test_gap_rule():
    assert check_gap_rule([0, 7, 17], [2, 5, 1])
    assert not check_gap_rule([0, 3], [2, 5])


def test_nested_schedules():
    check_nested(ZSchedule(1), 2)
    check_nested(SolCongruence(5), 1, sample_size=200)


def test_non_nested_schedule_is_reported():
    """(4, 1) is not a multiple of (2, 1) in Z x Z/2"""
    with pytest.raises(NestednessError) as exc_info:
        check_nested(ZCrossZ2Schedule(1), 1)
    assert exc_info.value.k == 1


def test_injectivity_radii():
    """Nontrivial elements of 2^k Z have word length at least 2^k"""
    assert injectivity_radii(ZSchedule(1), 3, 6) == [2, 4, None]
    assert injectivity_radii(SLCongruence(2, p=2), 2, 3) is None


def test_verify_filtration():
    report = verify_filtration(ZSchedule(1), 3, 6)
    assert report["nested"] and report["strict"]
    assert report["orders"] == [2, 4, 8]
    assert report["nondecreasing"]
    assert report["exceeds_radius"]


def test_dalpha_check_exact():
    """diam >= K order^alpha is decided without floating point"""
    metrics = _metrics([(8, 2), (64, 4), (512, 8)])
    report = dalpha_check(metrics, DAlphaParams(Fraction(1, 3), Fraction(1)))
    assert report["comparison"] == "exact"
    assert report["verdict"]
    report = dalpha_check(metrics, DAlphaParams(Fraction(1, 3), Fraction(101, 100)))
    assert report["per_component"] == [False, False, False]


def test_dalpha_check_float_constant():
    metrics = _metrics([(8, 2), (64, 4)])
    K = measured_constant(metrics, Fraction(1, 3))
    report = dalpha_check(metrics, DAlphaParams(Fraction(1, 3), K))
    assert report["comparison"] == "float"
    assert report["verdict"]


def test_dalpha_params_validation():
    with pytest.raises(InvalidInputError):
        DAlphaParams(Fraction(0), Fraction(1))
    with pytest.raises(InvalidInputError):
        DAlphaParams(Fraction(1, 2), Fraction(0))


def test_dalpha_estimate_recovers_exponent():
    metrics = _metrics([(2**k, 2 ** (k - 1)) for k in range(1, 6)])
    estimate = dalpha_estimate(metrics)
    assert estimate["alpha_hat"] == pytest.approx(1.0)
    assert estimate["K_hat"] == pytest.approx(0.5)
    assert not estimate["uncertain"]
    with pytest.raises(EstimationError):
        dalpha_estimate(metrics[:1])


def test_diameter_band():
    band = diameter_band(_metrics([(8, 2), (64, 6)]), [2, 3])
    assert band == {"ratios": [1.0, 2.0], "min": 1.0, "max": 2.0}
    with pytest.raises(InvalidInputError):
        diameter_band(_metrics([(8, 2)]), [1, 2])


def test_expansion_report_on_cycles():
    """Cheeger upper bounds of cycles decay like 1/n"""
    metrics = [
        GraphMetrics(order=n, diameter=n // 2, cheeger_lower=0.0, cheeger_upper=4 / n)
        for n in (8, 16, 32)
    ]
    report = expansion_report(metrics)
    assert report["verdict"] == "expansion fails empirically"
    assert report["decay_exponent"] == pytest.approx(-1.0)
    assert report["non_conclusive"]
