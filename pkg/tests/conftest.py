import numpy as np
import pytest

from eqpremium import (
    CalibrationTarget,
    ConsumptionStats,
    MarkovEconomy,
    calibrate_two_state,
)

# Base configurations used throughout: the long historical sample and the
# modern annual revision.
BASE_TARGET = dict(mean=0.0183, stddev=0.0357, serial_corr=-0.14,
                   risk_free=0.008, actual_equity_return=0.0698)
MODERN_TARGET = dict(mean=0.0194, stddev=0.0158, serial_corr=0.15,
                     risk_free=0.0097, actual_equity_return=0.0733)


def make_target(doc: dict) -> CalibrationTarget:
    return CalibrationTarget(
        stats=ConsumptionStats(xi=doc["mean"], delta=doc["stddev"],
                               sigma_c=doc["serial_corr"]),
        r_f=doc["risk_free"],
        r_e_actual=doc.get("actual_equity_return"),
    )


@pytest.fixture(scope="session")
def base_target() -> CalibrationTarget:
    return make_target(BASE_TARGET)


@pytest.fixture(scope="session")
def base_economy(base_target):
    return calibrate_two_state(base_target)


@pytest.fixture(scope="session")
def modern_target() -> CalibrationTarget:
    return make_target(MODERN_TARGET)


@pytest.fixture(scope="session")
def modern_economy(modern_target):
    return calibrate_two_state(modern_target)


def random_economy(rng: np.random.Generator,
                   min_det: float = 0.01) -> MarkovEconomy:
    """A valid two-state economy with |det(phi)| above min_det.

    For rows [a, 1-a] and [b, 1-b] the determinant is a - b, so the
    constraint is a simple rejection on the two stay probabilities.
    """
    while True:
        a, b = rng.uniform(0.02, 0.98, size=2)
        if abs(a - b) > min_det:
            break
    lam_down = rng.uniform(0.9, 1.05)
    lam_up = lam_down + rng.uniform(0.002, 0.15)
    return MarkovEconomy(phi=np.array([[a, 1.0 - a], [b, 1.0 - b]]),
                         lam=np.array([lam_up, lam_down]))


@pytest.fixture
def econ_factory():
    return random_economy
