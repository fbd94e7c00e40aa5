"""Load raw CSV series and reduce them to calibration statistics.

The pipeline is deliberately dumb: read columns, average within calendar
years, align series on overlapping years, apply the handful of identities
(real rate from nominal and inflation, total return from index and
dividend), then take plain sample statistics.  Every failure names the
file and row that caused it.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .calibration import CalibrationTarget
from .economy import ConsumptionStats
from .errors import (
    DegenerateMomentsError,
    ParseError,
    SchemaError,
    SpanError,
    ValidationError,
)

_MISSING_MARKERS = {"", ".", "na", "n/a", "nan", "null", "none"}


@dataclass(frozen=True, eq=False)
class AnnualSeries:
    """One value per calendar year, strictly increasing years.

    Gaps are rejected unless allow_gaps is set; raw source data often
    skips years, derived series usually must not.
    """

    years: tuple[int, ...]
    values: np.ndarray
    label: str = ""
    allow_gaps: bool = False

    def __post_init__(self):
        years = tuple(int(y) for y in self.years)
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(years),):
            raise ValidationError(
                f"{self.label or 'series'}: {len(years)} years but "
                f"{values.shape} values"
            )
        if any(b <= a for a, b in zip(years, years[1:])):
            raise ValidationError(
                f"{self.label or 'series'}: years must be strictly increasing"
            )
        if not self.allow_gaps:
            missing = [b for a, b in zip(years, years[1:]) if b != a + 1]
            if missing:
                raise ValidationError(
                    f"{self.label or 'series'}: gap before year {missing[0]}"
                )
        if not np.all(np.isfinite(values)):
            raise ValidationError(f"{self.label or 'series'}: non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.years)

    def as_mapping(self) -> dict[int, float]:
        return dict(zip(self.years, self.values.tolist()))

    def restrict(self, year_from: int | None = None,
                 year_to: int | None = None) -> "AnnualSeries":
        keep = [i for i, y in enumerate(self.years)
                if (year_from is None or y >= year_from)
                and (year_to is None or y <= year_to)]
        return AnnualSeries(
            years=tuple(self.years[i] for i in keep),
            values=self.values[keep],
            label=self.label,
            allow_gaps=True,
        )


def _year_of(cell: str, path: str, row: int) -> int:
    text = cell.strip()
    if len(text) >= 4 and text[:4].isdigit():
        # plain year or ISO-ish date, the leading 4 digits are the year
        if len(text) == 4 or text[4] in "-/Qq ":
            return int(text[:4])
    raise ParseError(f"{path}, row {row}: cannot read a year from {cell!r}")


def load_csv(path: str, year_column: str, value_column: str) -> AnnualSeries:
    """Read one column of a CSV into an annual series.

    The year column may hold plain years or dates; sub-annual rows are
    averaged within their calendar year.  Missing-value markers are
    dropped with a warning.  Unparseable cells raise ParseError naming
    the file row (header is row 1).
    """
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    for column in (year_column, value_column):
        if column not in frame.columns:
            raise SchemaError(
                f"{path}: no column {column!r}; available: {list(frame.columns)}"
            )
    years: list[int] = []
    values: list[float] = []
    dropped = 0
    for offset, (raw_year, raw_value) in enumerate(
            zip(frame[year_column], frame[value_column])):
        row = offset + 2  # header occupies row 1
        if str(raw_value).strip().lower() in _MISSING_MARKERS:
            dropped += 1
            continue
        year = _year_of(str(raw_year), path, row)
        try:
            value = float(raw_value)
        except ValueError:
            raise ParseError(
                f"{path}, row {row}: cannot read a number from {raw_value!r}"
            ) from None
        if not math.isfinite(value):
            raise ParseError(f"{path}, row {row}: non-finite value {raw_value!r}")
        years.append(year)
        values.append(value)
    if dropped:
        warnings.warn(f"{path}: dropped {dropped} rows with missing values",
                      stacklevel=2)
    if not years:
        raise SpanError(f"{path}: no usable rows")
    grouped = pd.Series(values, index=years).groupby(level=0).mean()
    return AnnualSeries(
        years=tuple(int(y) for y in grouped.index),
        values=grouped.to_numpy(),
        label=os.path.basename(path),
        allow_gaps=True,
    )


def _overlap_years(a: AnnualSeries, b: AnnualSeries, what: str) -> list[int]:
    common = sorted(set(a.years) & set(b.years))
    if not common:
        raise SpanError(
            f"{what}: no overlapping years between "
            f"{a.label or 'first series'} and {b.label or 'second series'}"
        )
    return common


def real_consumption_growth(services: AnnualSeries,
                            nondurables: AnnualSeries) -> AnnualSeries:
    """Net growth of summed consumption levels on the overlapping span.

    Growth for year t needs levels in t - 1 and t, so a single
    overlapping year yields an empty series (with a warning).
    """
    common = _overlap_years(services, nondurables, "consumption growth")
    s_map, n_map = services.as_mapping(), nondurables.as_mapping()
    level = {y: s_map[y] + n_map[y] for y in common}
    for y in common:
        if level[y] <= 0.0:
            raise ValidationError(f"consumption level for {y} is not positive")
    years = [y for y in common if y - 1 in level]
    if not years:
        warnings.warn("consumption series overlap on a single year, "
                      "growth is empty", stacklevel=2)
    values = np.array([level[y] / level[y - 1] - 1.0 for y in years])
    return AnnualSeries(years=tuple(years), values=values,
                        label="consumption growth", allow_gaps=True)


def real_return_from_nominal(nominal: AnnualSeries,
                             inflation: AnnualSeries) -> AnnualSeries:
    """Deflate nominal returns: (1 + nominal) / (1 + inflation) - 1."""
    common = _overlap_years(nominal, inflation, "real return")
    n_map, i_map = nominal.as_mapping(), inflation.as_mapping()
    for y in common:
        if i_map[y] <= -1.0:
            raise ValidationError(f"inflation for {y} is {i_map[y]!r}, at or "
                                  "below -100%")
    values = np.array([(1.0 + n_map[y]) / (1.0 + i_map[y]) - 1.0 for y in common])
    return AnnualSeries(years=tuple(common), values=values,
                        label=f"real {nominal.label or 'return'}",
                        allow_gaps=True)


def real_equity_return(index: AnnualSeries,
                       dividends: AnnualSeries) -> AnnualSeries:
    """Total return (index_t + dividend_t) / index_{t-1} - 1."""
    common = _overlap_years(index, dividends, "equity return")
    i_map, d_map = index.as_mapping(), dividends.as_mapping()
    years = [y for y in common if y - 1 in i_map]
    for y in years:
        if i_map[y] <= 0.0 or i_map[y - 1] <= 0.0:
            raise ValidationError(f"index level around {y} is not positive")
    if not years:
        warnings.warn("equity series overlap on a single year, "
                      "returns are empty", stacklevel=2)
    values = np.array([(i_map[y] + d_map[y]) / i_map[y - 1] - 1.0 for y in years])
    return AnnualSeries(years=tuple(years), values=values,
                        label="real equity return", allow_gaps=True)


@dataclass(frozen=True)
class SummaryStats:
    """Sample statistics over the common span of the three inputs."""

    r_f_mean: float
    r_e_mean: float
    growth_mean: float
    growth_stddev: float
    growth_serial_corr: float
    span: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "r_f_mean": self.r_f_mean,
            "r_e_mean": self.r_e_mean,
            "growth_mean": self.growth_mean,
            "growth_stddev": self.growth_stddev,
            "growth_serial_corr": self.growth_serial_corr,
            "span": list(self.span),
        }

    def to_target(self) -> CalibrationTarget:
        return CalibrationTarget(
            stats=ConsumptionStats(xi=self.growth_mean,
                                   delta=self.growth_stddev,
                                   sigma_c=self.growth_serial_corr),
            r_f=self.r_f_mean,
            r_e_actual=self.r_e_mean,
        )


def lag_one_autocorr(values: np.ndarray) -> float:
    """sum (x_t - m)(x_{t+1} - m) / sum (x_t - m)^2 over the sample."""
    dev = values - values.mean()
    denom = float(dev @ dev)
    if denom <= 0.0:
        raise DegenerateMomentsError("series is constant, correlation undefined")
    return float(dev[:-1] @ dev[1:]) / denom


def summarize(r_f: AnnualSeries, r_e: AnnualSeries,
              growth: AnnualSeries) -> SummaryStats:
    """Reduce the three aligned series to calibration statistics.

    All series are first restricted to their common span, which must
    leave at least three growth observations; growth must not be
    constant, since a zero stddev has no usable correlation.  The growth
    stddev is the sample (n - 1) estimator.
    """
    common = sorted(set(r_f.years) & set(r_e.years) & set(growth.years))
    if not common:
        raise SpanError("the riskless, equity, and growth series share no years")
    lo, hi = common[0], common[-1]
    if len(common) < 3:
        raise SpanError(
            f"common span {lo}-{hi} leaves {len(common)} growth observations, "
            "need at least 3"
        )
    g_map = growth.as_mapping()
    g_vals = np.array([g_map[y] for y in common])
    stddev = float(np.std(g_vals, ddof=1))
    if stddev <= 0.0:
        raise DegenerateMomentsError(
            "growth is constant over the common span, correlation undefined"
        )
    rf_map, re_map = r_f.as_mapping(), r_e.as_mapping()
    return SummaryStats(
        r_f_mean=float(np.mean([rf_map[y] for y in common])),
        r_e_mean=float(np.mean([re_map[y] for y in common])),
        growth_mean=float(g_vals.mean()),
        growth_stddev=stddev,
        growth_serial_corr=lag_one_autocorr(g_vals),
        span=(lo, hi),
    )
