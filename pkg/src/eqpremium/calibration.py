"""Calibrate a two-state economy to observed consumption statistics.

The construction is exact: a symmetric two-state chain has three free
parameters (growth spread, growth level, persistence) that map one-to-one
onto the target mean, stddev, and serial correlation, and the discount
factor follows from the observed riskless rate because a risk-neutral
bond always prices at beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .economy import ConsumptionStats, MarkovEconomy
from .errors import (
    CorrelationRangeError,
    InfeasibleGrowthError,
    ValidationError,
)


@dataclass(frozen=True)
class CalibrationTarget:
    """Observed moments the economy must reproduce.

    r_f is the mean riskless rate used to pin beta; r_e_actual is the
    observed mean equity return, kept around so a frontier sweep can ask
    which risk aversion matches it.
    """

    stats: ConsumptionStats
    r_f: float
    r_e_actual: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.r_f) and self.r_f > -1.0):
            raise ValidationError(f"risk-free rate must exceed -1, got {self.r_f!r}")
        if self.r_e_actual is not None and not math.isfinite(self.r_e_actual):
            raise ValidationError("actual equity return must be finite")

    def to_dict(self) -> dict:
        doc = {
            "mean": self.stats.xi,
            "stddev": self.stats.delta,
            "serial_corr": self.stats.sigma_c,
            "risk_free": self.r_f,
        }
        if self.r_e_actual is not None:
            doc["actual_equity_return"] = self.r_e_actual
        return doc


def target_from_dict(doc: dict) -> CalibrationTarget:
    """Read a target document; summary-statistics field names also work."""
    aliases = {
        "mean": ("mean", "growth_mean"),
        "stddev": ("stddev", "growth_stddev"),
        "serial_corr": ("serial_corr", "growth_serial_corr"),
        "risk_free": ("risk_free", "r_f_mean"),
        "actual_equity_return": ("actual_equity_return", "r_e_mean"),
    }
    values = {}
    for canonical, names in aliases.items():
        for name in names:
            if name in doc:
                values[canonical] = float(doc[name])
                break
    missing = [k for k in ("mean", "stddev", "serial_corr", "risk_free")
               if k not in values]
    if missing:
        raise ValidationError(f"target document is missing fields: {missing}")
    return CalibrationTarget(
        stats=ConsumptionStats(
            xi=values["mean"],
            delta=values["stddev"],
            sigma_c=values["serial_corr"],
        ),
        r_f=values["risk_free"],
        r_e_actual=values.get("actual_equity_return"),
    )


def calibrate_two_state(target: CalibrationTarget) -> tuple[MarkovEconomy, float]:
    """Build the symmetric two-state economy hitting the target exactly.

    Growth factors sit at 1 + xi +/- delta, the stay probability is
    (1 + sigma_c) / 2 so the chain's determinant equals the target serial
    correlation, and the stationary distribution is (1/2, 1/2) by
    symmetry.  Returns the economy together with beta = 1 / (1 + r_f).
    """
    xi, delta, sigma_c = target.stats.xi, target.stats.delta, target.stats.sigma_c
    if abs(sigma_c) >= 1.0:
        raise CorrelationRangeError(
            f"serial correlation must lie in (-1, 1), got {sigma_c!r}"
        )
    lam_down = 1.0 + xi - delta
    if lam_down <= 0.0:
        raise InfeasibleGrowthError(
            f"target implies gross growth factor {lam_down!r} <= 0 in the "
            "contraction state"
        )
    stay = (1.0 + sigma_c) / 2.0
    phi = np.array([[stay, 1.0 - stay], [1.0 - stay, stay]])
    lam = np.array([1.0 + xi + delta, lam_down])
    econ = MarkovEconomy(phi=phi, lam=lam, pi=np.array([0.5, 0.5]))
    beta = 1.0 / (1.0 + target.r_f)
    return econ, beta
