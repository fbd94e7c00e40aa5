"""Asset pricing on a finite-state Markov consumption economy.

The package calibrates a two-state chain to consumption statistics,
prices equity and bonds under CRRA preferences with separate risk
aversion per asset, sweeps the equity coefficient to trace the
return-volatility curve, finds the Sharpe-maximizing tangency, and
validates the analytic moments by Monte Carlo.
"""

from .calibration import CalibrationTarget, calibrate_two_state, target_from_dict
from .economy import (
    ConsumptionStats,
    MarkovEconomy,
    Preferences,
    consumption_moments,
    crra_discount_ratio,
    crra_utility,
    economy_from_dict,
    economy_to_dict,
    preferences_from_dict,
    preferences_to_dict,
    stationary_distribution,
)
from .errors import (
    AllInfeasibleError,
    CorrelationRangeError,
    DegenerateMomentsError,
    InfeasibleGrowthError,
    IngestError,
    ModelError,
    NoEquilibriumError,
    NoUniqueStationaryError,
    NumericalError,
    ParseError,
    SchemaError,
    SpanError,
    UnattainableReturnError,
    ValidationError,
)
from .frontier import (
    FrontierCurve,
    FrontierPoint,
    TangencyResult,
    find_tangency,
    match_actual_return,
    sweep_frontier,
    tangent_line,
)
from .ingest import (
    AnnualSeries,
    SummaryStats,
    lag_one_autocorr,
    load_csv,
    real_consumption_growth,
    real_equity_return,
    real_return_from_nominal,
    summarize,
)
from .pricing import (
    PricingSolution,
    bond_prices,
    bond_returns,
    equity_return_stdev,
    equity_returns,
    price_assets,
    solve_equity_prices,
)
from .simulation import GENERATOR_NAME, SimulationResult, sample_path, simulate

__version__ = "0.1.0"

__all__ = [
    "AllInfeasibleError",
    "AnnualSeries",
    "CalibrationTarget",
    "ConsumptionStats",
    "CorrelationRangeError",
    "DegenerateMomentsError",
    "FrontierCurve",
    "FrontierPoint",
    "InfeasibleGrowthError",
    "IngestError",
    "MarkovEconomy",
    "ModelError",
    "NoEquilibriumError",
    "NoUniqueStationaryError",
    "NumericalError",
    "ParseError",
    "Preferences",
    "PricingSolution",
    "SchemaError",
    "GENERATOR_NAME",
    "SimulationResult",
    "SpanError",
    "SummaryStats",
    "TangencyResult",
    "UnattainableReturnError",
    "ValidationError",
    "bond_prices",
    "bond_returns",
    "calibrate_two_state",
    "consumption_moments",
    "crra_discount_ratio",
    "crra_utility",
    "economy_from_dict",
    "economy_to_dict",
    "equity_return_stdev",
    "equity_returns",
    "find_tangency",
    "lag_one_autocorr",
    "load_csv",
    "match_actual_return",
    "preferences_from_dict",
    "preferences_to_dict",
    "price_assets",
    "real_consumption_growth",
    "real_equity_return",
    "real_return_from_nominal",
    "sample_path",
    "simulate",
    "solve_equity_prices",
    "stationary_distribution",
    "summarize",
    "sweep_frontier",
    "tangent_line",
    "target_from_dict",
    "__version__",
]
