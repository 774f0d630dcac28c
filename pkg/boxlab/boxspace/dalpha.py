"""Property D_alpha and expansion evidence for box spaces.

A box space has property D_alpha with constant K when every component
satisfies diam(G/M) >= K |G/M|^alpha.
"""
import logging
from fractions import Fraction
from typing import Sequence

import numpy as np

from boxlab.common.boxlab_dataclasses import DAlphaParams, GraphMetrics
from boxlab.common.exceptions import EstimationError, InvalidInputError

logger = logging.getLogger(__name__)

FLOAT_SLACK = 1e-12
# Cheeger upper bounds decaying at least like order^-1/2 count as failing expansion
DECAY_THRESHOLD = -0.5


def _exact_holds(diam: int, order: int, alpha: Fraction, K: Fraction) -> bool:
    # diam >= K order^(p/q)  <=>  diam^q Kden^q >= Knum^q order^p
    p, q = alpha.numerator, alpha.denominator
    return diam**q * K.denominator**q >= K.numerator**q * order**p


def dalpha_check(metrics: Sequence[GraphMetrics], params: DAlphaParams) -> dict:
    """Per component test of diam >= K order^alpha.

    The comparison is exact when alpha and K are rationals; a float K (for
    instance a measured constant) is compared in floating point with a
    relative slack of FLOAT_SLACK towards acceptance.
    """
    alpha = Fraction(params.alpha)
    exact = isinstance(params.K, (int, Fraction))
    per_component = []
    for m in metrics:
        if exact:
            per_component.append(_exact_holds(m.diameter, m.order, alpha, Fraction(params.K)))
        else:
            rhs = float(params.K) * m.order ** float(alpha)
            per_component.append(m.diameter >= rhs * (1 - FLOAT_SLACK))
    return {
        "alpha": str(alpha),
        "K": str(params.K),
        "comparison": "exact" if exact else "float",
        "slack": 0.0 if exact else FLOAT_SLACK,
        "per_component": per_component,
        "verdict": all(per_component),
    }


def measured_constant(metrics: Sequence[GraphMetrics], alpha) -> float:
    """min_k diam_k / order_k^alpha"""
    return min(m.diameter / m.order ** float(alpha) for m in metrics)


def dalpha_estimate(metrics: Sequence[GraphMetrics]) -> dict:
    """Least squares slope alpha_hat of log(diam) against log(order).

    Returns
    -------
    dict
        alpha_hat, K_hat = min diam / order^alpha_hat, per component residuals
        and an ``uncertain`` flag for fits through fewer than three points
    """
    orders = np.array([m.order for m in metrics], dtype=np.float64)
    diams = np.array([m.diameter for m in metrics], dtype=np.float64)
    if len(metrics) < 2 or np.unique(orders).size < 2:
        raise EstimationError("alpha estimation needs at least two distinct orders")
    if (diams < 1).any():
        raise EstimationError("alpha estimation needs diameters >= 1")
    x, y = np.log(orders), np.log(diams)
    alpha_hat, intercept = np.polyfit(x, y, 1)
    residuals = y - (alpha_hat * x + intercept)
    return {
        "alpha_hat": float(alpha_hat),
        "K_hat": float((diams / orders**alpha_hat).min()),
        "residuals": [float(r) for r in residuals],
        "points": len(metrics),
        "uncertain": len(metrics) < 3,
    }


def diameter_band(metrics: Sequence[GraphMetrics], references: Sequence[float]) -> dict:
    """Ratios diam_k / reference_k with their range"""
    if len(metrics) != len(references):
        raise InvalidInputError("one reference value per component is needed")
    ratios = [m.diameter / float(r) for m, r in zip(metrics, references)]
    return {"ratios": ratios, "min": min(ratios), "max": max(ratios)}


def expansion_report(metrics: Sequence[GraphMetrics]) -> dict:
    """Desk scale expansion evidence from the spectral Cheeger bounds.

    The verdict is "expansion fails empirically" when the Cheeger upper
    bounds decay at least like order^DECAY_THRESHOLD, and otherwise
    "no expansion counterexample up to k=<count>". Both are evidence, the
    report is always flagged non conclusive.
    """
    if not metrics:
        raise InvalidInputError("expansion report needs at least one component")
    lowers = [m.cheeger_lower for m in metrics]
    uppers = [m.cheeger_upper for m in metrics]
    report = {
        "min_lower_bound": min(lowers),
        "lower_bounds": lowers,
        "upper_bounds": uppers,
        "decay_exponent": None,
        "non_conclusive": True,
        "normalization": "edge boundary over vertex count",
    }
    verdict = f"no expansion counterexample up to k={len(metrics)}"
    usable = [(m.order, u) for m, u in zip(metrics, uppers) if u > 0]
    if len(usable) >= 2 and len({o for o, _ in usable}) >= 2:
        x = np.log([o for o, _ in usable])
        y = np.log([u for _, u in usable])
        slope = float(np.polyfit(x, y, 1)[0])
        report["decay_exponent"] = slope
        if slope <= DECAY_THRESHOLD:
            verdict = "expansion fails empirically"
    elif len(metrics) > 1 and any(u == 0 for u in uppers):
        verdict = "expansion fails empirically"
    report["verdict"] = verdict
    logger.debug(f"expansion verdict: {verdict}")
    return report
