import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from evtmargin.extremes import block_extremes, default_block_size
from evtmargin.timeseries import DataError


def test_hand_example():
    b = block_extremes([1, -2, 3, -4, 5, -6], 3)
    assert b.maxima.tolist() == [3, 5]
    assert b.minima.tolist() == [-2, -6]
    assert b.common.tolist() == [2, 6, 3, 5]


def test_remainder_dropped():
    b = block_extremes(np.arange(7.0), 3)
    assert len(b) == 2 and b.maxima.tolist() == [2, 5]


def test_full_sample_block_count():
    assert len(block_extremes(np.zeros(431_346), 96)) == 4493


def test_too_short():
    with pytest.raises(DataError):
        block_extremes([1.0, 2.0], 3)
    with pytest.raises(ValueError):
        block_extremes([1.0, 2.0], 1)


@pytest.mark.parametrize("freq, n", [("5min", 96), ("30min", 48), ("1h", 48), ("8h", 15), ("1d", 10)])
def test_default_block_sizes(freq, n):
    assert default_block_size(freq) == n


def test_unsupported_frequency():
    with pytest.raises(DataError):
        default_block_size("15min")


def test_csv_dump(tmp_path):
    p = tmp_path / "b.csv"
    block_extremes([1, -2, 3, -4, 5, -6], 3).to_csv(p)
    assert p.read_text().splitlines() == ["block_index,min,max", "0,-2.0,3.0", "1,-6.0,5.0"]


series_and_block = st.integers(2, 7).flatmap(
    lambda n: st.tuples(st.lists(st.floats(-100, 100), min_size=n, max_size=60), st.just(n)))


@given(series_and_block)
def test_brute_force_equivalence(args):
    values, n = args
    b = block_extremes(values, n)
    m = len(values) // n
    assert len(b.maxima) == len(b.minima) == m and len(b.common) == 2 * m
    blocks = [values[i * n:(i + 1) * n] for i in range(m)]
    assert [v for blk in blocks for v in blk] == values[: m * n]
    for i, blk in enumerate(blocks):
        assert b.maxima[i] == max(blk) and b.minima[i] == min(blk)
        assert b.minima[i] <= b.maxima[i]
        assert all(b.maxima[i] >= v for v in blk)


@given(series_and_block)
def test_negation_symmetry(args):
    values, n = args
    a = block_extremes(values, n)
    b = block_extremes([-v for v in values], n)
    assert np.array_equal(b.maxima, -a.minima)
    assert np.array_equal(b.minima, -a.maxima)
