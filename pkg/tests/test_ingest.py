import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqpremium import (
    AnnualSeries,
    DegenerateMomentsError,
    ParseError,
    SchemaError,
    SpanError,
    ValidationError,
    lag_one_autocorr,
    load_csv,
    real_consumption_growth,
    real_equity_return,
    real_return_from_nominal,
    summarize,
)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def series(years, values, label="", allow_gaps=True):
    return AnnualSeries(years=tuple(years), values=np.asarray(values, float),
                        label=label, allow_gaps=allow_gaps)


class TestLoadCsv:
    def test_plain_years(self, tmp_path):
        path = write(tmp_path, "a.csv", "year,level\n1960,10\n1961,20\n")
        out = load_csv(path, "year", "level")
        assert out.years == (1960, 1961)
        assert out.values.tolist() == [10.0, 20.0]
        assert out.label == "a.csv"

    def test_quarterly_rows_average_within_year(self, tmp_path):
        rows = ["date,level"]
        for q, v in zip(range(1, 5), (10, 12, 14, 16)):
            rows.append(f"1960Q{q},{v}")
        for q, v in zip(range(1, 5), (20, 22, 24, 26)):
            rows.append(f"1961Q{q},{v}")
        path = write(tmp_path, "q.csv", "\n".join(rows) + "\n")
        out = load_csv(path, "date", "level")
        assert out.years == (1960, 1961)
        assert out.values.tolist() == [13.0, 23.0]

    def test_iso_dates(self, tmp_path):
        path = write(tmp_path, "d.csv",
                     "date,value\n1960-07-01,5\n1961-07-01,6\n")
        out = load_csv(path, "date", "value")
        assert out.years == (1960, 1961)

    def test_missing_markers_dropped_with_warning(self, tmp_path):
        path = write(tmp_path, "m.csv",
                     "year,v\n1960,1\n1961,NA\n1962,.\n1963,4\n")
        with pytest.warns(UserWarning, match="dropped 2"):
            out = load_csv(path, "year", "v")
        assert out.years == (1960, 1963)

    def test_bad_number_names_row(self, tmp_path):
        path = write(tmp_path, "bad.csv",
                     "year,v\n1960,1\n1961,2\n1962,oops\n")
        with pytest.raises(ParseError, match="row 4"):
            load_csv(path, "year", "v")

    def test_bad_year_names_row(self, tmp_path):
        path = write(tmp_path, "bady.csv", "year,v\nquux,1\n")
        with pytest.raises(ParseError, match="row 2"):
            load_csv(path, "year", "v")

    def test_missing_column_lists_available(self, tmp_path):
        path = write(tmp_path, "s.csv", "year,v\n1960,1\n")
        with pytest.raises(SchemaError, match="'year'"):
            load_csv(path, "date", "v")

    def test_all_rows_missing(self, tmp_path):
        path = write(tmp_path, "e.csv", "year,v\n1960,NA\n")
        with pytest.warns(UserWarning):
            with pytest.raises(SpanError, match="no usable rows"):
                load_csv(path, "year", "v")


class TestAnnualSeries:
    def test_gap_rejected_by_default(self):
        with pytest.raises(ValidationError, match="gap before year 1962"):
            AnnualSeries(years=(1960, 1962), values=np.array([1.0, 2.0]))

    def test_gap_allowed_when_flagged(self):
        s = series([1960, 1962], [1.0, 2.0])
        assert len(s) == 2

    def test_ordering_enforced(self):
        with pytest.raises(ValidationError, match="increasing"):
            AnnualSeries(years=(1961, 1960), values=np.array([1.0, 2.0]),
                         allow_gaps=True)

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            AnnualSeries(years=(1960,), values=np.array([1.0, 2.0]))

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError, match="non-finite"):
            AnnualSeries(years=(1960,), values=np.array([np.nan]))

    def test_restrict(self):
        s = series(range(1960, 1970), range(10))
        cut = s.restrict(1963, 1965)
        assert cut.years == (1963, 1964, 1965)
        assert cut.values.tolist() == [3.0, 4.0, 5.0]

    def test_restrict_open_ended(self):
        s = series(range(1960, 1965), range(5))
        assert s.restrict(year_from=1963).years == (1963, 1964)
        assert s.restrict(year_to=1961).years == (1960, 1961)


class TestDerivedSeries:
    def test_consumption_growth_hand_oracle(self):
        svc = series([1960, 1961], [100.0, 105.0])
        nd = series([1960, 1961], [50.0, 55.0])
        growth = real_consumption_growth(svc, nd)
        assert growth.years == (1961,)
        assert growth.values[0] == pytest.approx(160.0 / 150.0 - 1.0,
                                                 abs=1e-15)

    def test_single_overlap_year_warns_empty(self):
        svc = series([1960], [100.0])
        nd = series([1960], [50.0])
        with pytest.warns(UserWarning, match="single year"):
            growth = real_consumption_growth(svc, nd)
        assert len(growth) == 0

    def test_no_overlap_raises(self):
        svc = series([1960], [100.0])
        nd = series([1970], [50.0])
        with pytest.raises(SpanError, match="no overlapping"):
            real_consumption_growth(svc, nd)

    def test_nonpositive_level_rejected(self):
        svc = series([1960, 1961], [100.0, -200.0])
        nd = series([1960, 1961], [50.0, 55.0])
        with pytest.raises(ValidationError, match="not positive"):
            real_consumption_growth(svc, nd)

    def test_fisher_relation(self):
        nominal = series([1960], [0.05], label="y")
        inflation = series([1960], [0.02])
        real = real_return_from_nominal(nominal, inflation)
        assert real.values[0] == pytest.approx(1.05 / 1.02 - 1.0, abs=1e-15)

    @given(n=st.floats(-0.5, 0.5), i=st.floats(-0.5, 0.5))
    @settings(max_examples=100, deadline=None)
    def test_fisher_round_trip(self, n, i):
        nominal = series([1960], [n])
        inflation = series([1960], [i])
        real = real_return_from_nominal(nominal, inflation)
        # re-inflating the real rate recovers the nominal rate
        back = (1.0 + real.values[0]) * (1.0 + i) - 1.0
        assert back == pytest.approx(n, abs=1e-12)

    def test_hyperinflation_guard(self):
        nominal = series([1960], [0.05])
        inflation = series([1960], [-1.0])
        with pytest.raises(ValidationError, match="-100%"):
            real_return_from_nominal(nominal, inflation)

    def test_equity_total_return(self):
        index = series([1960, 1961], [100.0, 105.0])
        div = series([1960, 1961], [2.5, 3.0])
        out = real_equity_return(index, div)
        assert out.years == (1961,)
        assert out.values[0] == pytest.approx(0.08, abs=1e-15)

    def test_equity_nonpositive_index(self):
        index = series([1960, 1961], [100.0, -5.0])
        div = series([1960, 1961], [2.5, 3.0])
        with pytest.raises(ValidationError, match="not positive"):
            real_equity_return(index, div)


class TestSummarize:
    def test_alternating_growth_oracle(self):
        years = list(range(1960, 1980))
        g_vals = [0.01 if y % 2 == 0 else 0.03 for y in years]
        growth = series(years, g_vals)
        r_f = series(years, [0.005] * 20)
        r_e = series(years, [0.07] * 20)
        stats = summarize(r_f, r_e, growth)
        assert stats.growth_mean == pytest.approx(0.02, abs=1e-15)
        assert stats.growth_stddev == pytest.approx(
            float(np.std(g_vals, ddof=1)), abs=1e-15)
        # strict alternation is almost perfectly negatively correlated
        expected = lag_one_autocorr(np.array(g_vals))
        assert stats.growth_serial_corr == pytest.approx(expected, abs=1e-12)
        assert expected < -0.9
        assert stats.r_f_mean == pytest.approx(0.005, abs=1e-15)
        assert stats.r_e_mean == pytest.approx(0.07, abs=1e-15)
        assert stats.span == (1960, 1979)

    def test_common_span_is_intersection(self):
        growth = series(range(1960, 1980), np.linspace(0.0, 0.19, 20))
        r_f = series(range(1965, 1990), [0.01] * 25)
        r_e = series(range(1950, 1975), [0.07] * 25)
        stats = summarize(r_f, r_e, growth)
        assert stats.span == (1965, 1974)
        assert stats.growth_mean == pytest.approx(
            float(np.mean(np.linspace(0.0, 0.19, 20)[5:15])), abs=1e-15)

    def test_too_few_observations(self):
        years = [1960, 1961]
        with pytest.raises(SpanError, match="at least 3"):
            summarize(series(years, [0.01, 0.01]),
                      series(years, [0.07, 0.07]),
                      series(years, [0.01, 0.02]))

    def test_no_common_years(self):
        with pytest.raises(SpanError, match="share no years"):
            summarize(series([1960], [0.01]),
                      series([1970], [0.07]),
                      series([1980], [0.01]))

    def test_constant_growth_rejected(self):
        # 0.015625 is a dyadic value, so the sample stddev is exactly zero
        years = list(range(1960, 1970))
        with pytest.raises(DegenerateMomentsError):
            summarize(series(years, [0.01] * 10),
                      series(years, [0.07] * 10),
                      series(years, [0.015625] * 10))

    def test_to_target_mapping(self):
        years = list(range(1960, 1970))
        g_vals = [0.01 if y % 2 == 0 else 0.03 for y in years]
        stats = summarize(series(years, [0.005] * 10),
                          series(years, [0.07] * 10),
                          series(years, g_vals))
        target = stats.to_target()
        assert target.stats.xi == stats.growth_mean
        assert target.stats.delta == stats.growth_stddev
        assert target.stats.sigma_c == stats.growth_serial_corr
        assert target.r_f == stats.r_f_mean
        assert target.r_e_actual == stats.r_e_mean


class TestLagOneAutocorr:
    def test_hand_oracle(self):
        x = np.array([1.0, 2.0, 3.0, 2.0, 1.0])
        dev = x - x.mean()
        expected = float(dev[:-1] @ dev[1:]) / float(dev @ dev)
        assert lag_one_autocorr(x) == pytest.approx(expected, abs=1e-15)

    def test_constant_rejected(self):
        with pytest.raises(DegenerateMomentsError):
            lag_one_autocorr(np.full(10, 3.0))


class TestBundledFixturePipeline:
    def test_recovers_modern_target(self):
        # the packaged snapshot CSVs must reproduce the modern calibration
        # inputs through the full pipeline
        from importlib import resources

        root = resources.files("eqpremium") / "fixtures" / "pipeline"
        with resources.as_file(root) as base:
            services = load_csv(str(base / "services.csv"), "date", "value")
            nondur = load_csv(str(base / "nondurables.csv"), "date", "value")
            infl = load_csv(str(base / "inflation.csv"), "year", "value")
            yld = load_csv(str(base / "yield_1y.csv"), "date", "value")
            index = load_csv(str(base / "sp500.csv"), "year", "real_index")
            div = load_csv(str(base / "sp500.csv"), "year", "real_dividend")

        growth = real_consumption_growth(services, nondur)
        r_f = real_return_from_nominal(yld, infl)
        # the snapshot's index and dividend columns are already deflated
        r_e = real_equity_return(index, div)
        stats = summarize(r_f, r_e, growth)

        assert stats.growth_mean == pytest.approx(0.0194, abs=0.01)
        assert stats.growth_stddev == pytest.approx(0.0158, abs=0.01)
        assert stats.growth_serial_corr == pytest.approx(0.15, abs=0.01)
        assert stats.r_f_mean == pytest.approx(0.0097, abs=0.01)
        assert stats.r_e_mean == pytest.approx(0.0733, abs=0.01)
        assert stats.span == (1960, 2022)
