import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqpremium import (
    CalibrationTarget,
    ConsumptionStats,
    InfeasibleGrowthError,
    ValidationError,
    bond_prices,
    bond_returns,
    calibrate_two_state,
    consumption_moments,
    target_from_dict,
)


class TestCalibrateTwoState:
    def test_base_parameters(self, base_target):
        econ, beta = calibrate_two_state(base_target)
        assert np.allclose(econ.phi, [[0.43, 0.57], [0.57, 0.43]], atol=1e-12)
        assert np.allclose(econ.lam, [1.054, 0.9826], atol=1e-12)
        assert np.allclose(econ.pi, [0.5, 0.5], atol=0.0)
        assert beta == pytest.approx(1.0 / 1.008, abs=1e-15)

    def test_round_trip_base(self, base_target):
        econ, _ = calibrate_two_state(base_target)
        stats = consumption_moments(econ)
        assert stats.xi == pytest.approx(0.0183, abs=1e-12)
        assert stats.delta == pytest.approx(0.0357, abs=1e-12)
        assert stats.sigma_c == pytest.approx(-0.14, abs=1e-12)

    def test_risk_free_anchor(self, base_target):
        # beta = 1 / (1 + r_f) makes the risk-neutral bond yield r_f back
        econ, beta = calibrate_two_state(base_target)
        _, r_f = bond_returns(econ, bond_prices(econ, 0.0, beta))
        assert r_f == pytest.approx(base_target.r_f, abs=1e-12)

    @given(xi=st.floats(-0.1, 0.1), delta=st.floats(0.002, 0.2),
           sigma_c=st.floats(-0.9, 0.9), r_f=st.floats(0.0, 0.05))
    @settings(max_examples=150, deadline=None)
    def test_round_trip_randomized(self, xi, delta, sigma_c, r_f):
        target = CalibrationTarget(
            stats=ConsumptionStats(xi=xi, delta=delta, sigma_c=sigma_c),
            r_f=r_f)
        econ, beta = calibrate_two_state(target)
        stats = consumption_moments(econ)
        assert stats.xi == pytest.approx(xi, abs=1e-12)
        assert stats.delta == pytest.approx(delta, abs=1e-12)
        assert stats.sigma_c == pytest.approx(sigma_c, abs=1e-12)
        _, r_f_model = bond_returns(econ, bond_prices(econ, 0.0, beta))
        assert r_f_model == pytest.approx(r_f, abs=1e-12)

    def test_zero_risk_free_gives_beta_one(self):
        target = CalibrationTarget(
            stats=ConsumptionStats(xi=0.02, delta=0.01, sigma_c=0.1), r_f=0.0)
        _, beta = calibrate_two_state(target)
        assert beta == 1.0

    def test_infeasible_spread(self):
        target = CalibrationTarget(
            stats=ConsumptionStats(xi=0.0, delta=1.5, sigma_c=0.0), r_f=0.01)
        with pytest.raises(InfeasibleGrowthError):
            calibrate_two_state(target)

    def test_zero_stddev_rejected_at_target(self):
        with pytest.raises(ValidationError):
            CalibrationTarget(stats=ConsumptionStats(xi=0.0, delta=0.0,
                                                     sigma_c=0.0), r_f=0.01)

    def test_risk_free_bound(self):
        with pytest.raises(ValidationError):
            CalibrationTarget(stats=ConsumptionStats(xi=0.0, delta=0.01,
                                                     sigma_c=0.0), r_f=-1.0)


class TestTargetSerialization:
    def test_canonical_names(self):
        target = target_from_dict({"mean": 0.0183, "stddev": 0.0357,
                                   "serial_corr": -0.14, "risk_free": 0.008,
                                   "actual_equity_return": 0.0698})
        assert target.stats.xi == 0.0183
        assert target.stats.delta == 0.0357
        assert target.stats.sigma_c == -0.14
        assert target.r_f == 0.008
        assert target.r_e_actual == 0.0698

    def test_summary_stats_names_accepted(self):
        # output of the stats pipeline feeds straight into calibrate
        target = target_from_dict({"growth_mean": 0.0194,
                                   "growth_stddev": 0.0158,
                                   "growth_serial_corr": 0.15,
                                   "r_f_mean": 0.0097,
                                   "r_e_mean": 0.0733,
                                   "span": [1960, 2022]})
        assert target.stats.xi == 0.0194
        assert target.r_f == 0.0097
        assert target.r_e_actual == 0.0733

    def test_actual_return_optional(self):
        target = target_from_dict({"mean": 0.01, "stddev": 0.02,
                                   "serial_corr": 0.0, "risk_free": 0.01})
        assert target.r_e_actual is None

    def test_missing_fields_reported(self):
        with pytest.raises(ValidationError) as excinfo:
            target_from_dict({"mean": 0.01, "stddev": 0.02})
        message = str(excinfo.value)
        assert "serial_corr" in message and "risk_free" in message

    def test_to_dict_round_trip(self, modern_target):
        back = target_from_dict(modern_target.to_dict())
        assert back == modern_target

    def test_unknown_keys_ignored(self):
        target = target_from_dict({"mean": 0.01, "stddev": 0.02,
                                   "serial_corr": 0.0, "risk_free": 0.01,
                                   "label": "whatever"})
        assert target.r_f == 0.01
