import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from evtmargin.timeseries import (ChangeKind, DataError, PriceSeries, changes,
                                  load_price_csv, resample, summarize)

T0 = 1_483_228_800_000
FIVE = 300_000


def series(prices, freq="5min"):
    step = {"5min": FIVE, "1h": 12 * FIVE}[freq]
    return PriceSeries(freq, T0 + step * np.arange(len(prices)), prices)


def test_load_two_rows(write_prices):
    p = write_prices([("2017-01-01T00:00Z", 960.0), ("2017-01-01T00:05Z", 961.5)])
    s = load_price_csv(p, "5min")
    assert len(s) == 2
    assert s.prices.tolist() == [960.0, 961.5]
    assert s.timestamps[0] == T0


def test_load_epoch_millis(write_prices):
    s = load_price_csv(write_prices([(T0, 1.0), (T0 + FIVE, 2.0)]), "5min")
    assert s.timestamps.tolist() == [T0, T0 + FIVE]


def test_non_positive_price_reports_line(write_prices):
    p = write_prices([("2017-01-01T00:00:00Z", 0.0)])
    with pytest.raises(DataError, match="non-positive price at line 2"):
        load_price_csv(p, "5min")


def test_reversed_rows_sort(write_prices):
    rows = [("2017-01-01T00:00:00Z", 1.0), ("2017-01-01T00:05:00Z", 2.0),
            ("2017-01-01T00:10:00Z", 3.0)]
    a = load_price_csv(write_prices(rows, "a.csv"), "5min")
    b = load_price_csv(write_prices(rows[::-1], "b.csv"), "5min")
    assert np.array_equal(a.prices, b.prices)
    assert np.array_equal(a.timestamps, b.timestamps)


@pytest.mark.parametrize("rows, msg", [
    ([("2017-01-01T00:00:00Z", 1.0), ("nonsense", 2.0)], "line 3"),
    ([("2017-01-01T00:00:00Z", 1.0), ("2017-01-01T00:00:00Z", 2.0)], "duplicate"),
    ([("2017-01-01T00:00:00Z", 1.0), ("2017-01-01T00:07:00Z", 2.0)], "grid"),
    ([("2017-01-01T00:00:00Z", 1.0), ("2017-01-01T00:15:00Z", 2.0)], "gap"),
])
def test_load_errors(write_prices, rows, msg):
    with pytest.raises(DataError, match=msg):
        load_price_csv(write_prices(rows), "5min")


def test_gap_forward_fill(write_prices):
    p = write_prices([("2017-01-01T00:00:00Z", 1.0), ("2017-01-01T00:15:00Z", 2.0)])
    s = load_price_csv(p, "5min", fill_gaps=True)
    assert s.prices.tolist() == [1.0, 1.0, 1.0, 2.0]
    assert s.filled == 2


def test_series_is_immutable():
    s = series([1.0, 2.0])
    with pytest.raises(ValueError):
        s.prices[0] = 3.0


def test_resample_stride():
    assert len(resample(series(np.ones(12)), "1h")) == 1
    r = resample(series(np.arange(1.0, 14.0)), "1h")
    assert r.prices.tolist() == [1.0, 13.0]
    assert r.frequency == "1h"


def test_resample_identity():
    s = series([1.0, 2.0, 3.0])
    r = resample(s, "5min")
    assert np.array_equal(r.prices, s.prices) and np.array_equal(r.timestamps, s.timestamps)


def test_resample_full_sample_length():
    s = series(np.ones(431_346))
    daily = resample(s, "1d")
    assert len(daily) == 1498
    assert len(changes(daily, "standard")) == 1497
    assert len(changes(resample(s, "8h"), "standard")) == 4493


def test_resample_rejects_non_multiple():
    with pytest.raises(DataError):
        resample(series([1.0, 2.0], "1h"), "30min")


@given(st.lists(st.floats(0.5, 2.0), min_size=1, max_size=300),
       st.sampled_from([("30min", "1h"), ("1h", "8h"), ("8h", "1d"), ("30min", "1d")]))
def test_resample_composes(prices, pair):
    a, b = pair
    s = series(prices)
    x, y = resample(resample(s, a), b), resample(s, b)
    assert np.array_equal(x.prices, y.prices) and np.array_equal(x.timestamps, y.timestamps)


def test_changes_arithmetic():
    s = series([100.0, 110.0])
    assert changes(s, "standard", 1.0).values[0] == pytest.approx(0.10, abs=1e-15)
    assert changes(s, "perpetual", 1.0).values[0] == pytest.approx(1 / 11, abs=1e-15)
    s = series([100.0, 50.0])
    assert changes(s, ChangeKind.PERPETUAL, 1.0).values[0] == -1.0
    assert changes(s, ChangeKind.STANDARD, 1.0).values[0] == -0.5


def test_changes_too_short():
    with pytest.raises(DataError):
        changes(series([1.0]), "standard")


@given(st.floats(1.0, 1e5), st.lists(st.floats(0.01, 100.0), min_size=1, max_size=50))
def test_perpetual_is_standard_over_one_plus_standard(start, ratios):
    prices = [start]
    for r in ratios:
        prices.append(prices[-1] * r if 1e-3 < prices[-1] * r < 1e8 else prices[-1])
    s = series(prices)
    std = changes(s, "standard", 1.0).values
    per = changes(s, "perpetual", 1.0).values
    assert np.all(np.abs(per - std / (1 + std)) <= 1e-12 * np.maximum(1.0, np.abs(per)))
    assert np.all(std > -1) and np.all(per < 1)
    assert len(per) == len(prices) - 1


def test_summarize_symmetric():
    st_ = summarize([1, 2, 3, 4, 5])
    assert (st_.mean, st_.median, st_.min, st_.max) == (3, 3, 1, 5)
    assert st_.skewness == 0.0
    assert st_.sd == pytest.approx(math.sqrt(2.5))


def test_summarize_degenerate():
    st_ = summarize([0, 0, 0, 0])
    assert st_.sd == 0 and st_.skewness is None and st_.kurtosis is None


def test_constant_prices_give_zero_location():
    s = summarize(changes(series([7.0] * 20), "perpetual"))
    assert all(v == 0 for v in (s.min, s.p25, s.median, s.mean, s.p75, s.max))


def test_normal_moments():
    x = np.random.default_rng(1).standard_normal(10_000)
    s = summarize(x)
    assert abs(s.skewness) < 0.1
    assert abs(s.kurtosis - 3) < 0.3


def test_summary_row_names():
    row = summarize([1.0, 2.0, 4.0]).as_row()
    assert list(row) == ["Min", "P25", "Median", "Mean", "P75", "Max",
                         "Skewness", "Kurtosis", "S.D.", "Nobs"]


@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=200))
def test_summary_ordering(values):
    s = summarize(values)
    assert s.min <= s.p25 <= s.median <= s.p75 <= s.max
    assert s.sd >= 0 and s.nobs == len(values)
