"""Price ingestion, resampling, price changes and summary statistics.

Prices are held as epoch-millisecond timestamps plus float prices. Two
price-change definitions are supported:

    standard   : scale * (F_t / F_{t-1} - 1)
    perpetual  : scale * (1 - F_{t-1} / F_t)

The perpetual definition is the percentage change of the coin-denominated
contract value 1/F, which is what an inverse (coin-margined) contract
holder experiences.
"""
from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

FREQUENCIES_MS = {
    "5min": 5 * 60_000,
    "30min": 30 * 60_000,
    "1h": 60 * 60_000,
    "8h": 8 * 60 * 60_000,
    "1d": 24 * 60 * 60_000,
}

TABLE1_ROWS = ("Min", "P25", "Median", "Mean", "P75", "Max",
               "Skewness", "Kurtosis", "S.D.", "Nobs")


class DataError(ValueError):
    """Raised for malformed or inconsistent input data."""


class ChangeKind(str, enum.Enum):
    STANDARD = "standard"
    PERPETUAL = "perpetual"


def frequency_ms(frequency: str) -> int:
    try:
        return FREQUENCIES_MS[frequency]
    except KeyError:
        raise DataError(f"unsupported frequency {frequency!r}; "
                        f"expected one of {sorted(FREQUENCIES_MS)}") from None


def _frozen(a) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PriceSeries:
    frequency: str
    timestamps: np.ndarray  # int64 epoch milliseconds, UTC
    prices: np.ndarray
    filled: int = 0  # number of gap points forward-filled at ingestion

    def __post_init__(self):
        step = frequency_ms(self.frequency)
        ts = _frozen(np.asarray(self.timestamps, dtype=np.int64))
        px = _frozen(np.asarray(self.prices, dtype=float))
        if ts.shape != px.shape or ts.ndim != 1:
            raise DataError("timestamps and prices must be 1-d and of equal length")
        if px.size and not np.all(px > 0):
            raise DataError("prices must be strictly positive")
        if ts.size > 1 and not np.all(np.diff(ts) == step):
            raise DataError(f"timestamps are not spaced exactly {self.frequency} apart")
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "prices", px)

    def __len__(self):
        return self.prices.size


@dataclass(frozen=True)
class ChangeSeries:
    kind: ChangeKind
    values: np.ndarray
    scale: float = 100.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ChangeKind(self.kind))
        object.__setattr__(self, "values", _frozen(np.asarray(self.values, dtype=float)))

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class SummaryStats:
    """Distributional summary of a change series.

    ``kurtosis`` is raw (a normal sample gives 3). ``skewness`` and
    ``kurtosis`` are ``None`` when the series is constant. ``sd`` is the
    sample (n - 1) standard deviation; the standardised moments use the
    population second moment.
    """
    min: float
    p25: float
    median: float
    mean: float
    p75: float
    max: float
    skewness: float | None
    kurtosis: float | None
    sd: float
    nobs: int

    def as_row(self) -> dict:
        """Values keyed by the published row names."""
        vals = (self.min, self.p25, self.median, self.mean, self.p75, self.max,
                self.skewness, self.kurtosis, self.sd, self.nobs)
        return dict(zip(TABLE1_ROWS, vals))

    def scaled(self, factor: float) -> "SummaryStats":
        """Rescale location/dispersion fields; shape statistics are scale free."""
        return SummaryStats(self.min * factor, self.p25 * factor, self.median * factor,
                            self.mean * factor, self.p75 * factor, self.max * factor,
                            self.skewness, self.kurtosis, self.sd * factor, self.nobs)


def parse_timestamp(text: str) -> int:
    """ISO-8601 UTC (``2017-01-01T00:05:00Z``) or integer epoch ms -> epoch ms."""
    text = text.strip()
    if text.lstrip("-").isdigit():
        return int(text)
    iso = text[:-1] + "+00:00" if text.endswith(("Z", "z")) else text
    dt = datetime.fromisoformat(iso)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    elif dt.utcoffset().total_seconds() != 0:
        raise ValueError("timestamp is not UTC")
    return int(round(dt.timestamp() * 1000))


def format_timestamp(ms: int) -> str:
    return datetime.fromtimestamp(ms / 1000, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def load_price_csv(path, frequency: str, fill_gaps: bool = False) -> PriceSeries:
    """Read a ``timestamp,price`` CSV into a validated :class:`PriceSeries`.

    Rows may appear in any order; they are sorted by timestamp. A missing
    interval is an error unless ``fill_gaps`` is set, in which case the
    last observed price is carried forward and the count recorded in
    ``PriceSeries.filled``.
    """
    step = frequency_ms(frequency)
    rows = []
    with open(Path(path), newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["timestamp", "price"]:
            raise DataError(f"{path}: expected header 'timestamp,price'")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise DataError(f"malformed row at line {lineno}: expected 2 columns")
            try:
                ts = parse_timestamp(row[0])
                price = float(row[1])
            except ValueError as exc:
                raise DataError(f"malformed row at line {lineno}: {exc}") from None
            if not math.isfinite(price) or price <= 0:
                raise DataError(f"non-positive price at line {lineno}")
            rows.append((ts, price, lineno))
    if not rows:
        raise DataError(f"{path}: no data rows")

    rows.sort(key=lambda r: r[0])
    ts = np.array([r[0] for r in rows], dtype=np.int64)
    px = np.array([r[1] for r in rows], dtype=float)
    diffs = np.diff(ts)
    if np.any(diffs == 0):
        i = int(np.flatnonzero(diffs == 0)[0])
        raise DataError(f"duplicate timestamp {format_timestamp(ts[i])} at line {rows[i + 1][2]}")
    bad = np.flatnonzero(diffs % step != 0)
    if bad.size:
        i = int(bad[0])
        raise DataError(f"timestamp at line {rows[i + 1][2]} is off the {frequency} grid")
    gaps = np.flatnonzero(diffs != step)
    if gaps.size and not fill_gaps:
        i = int(gaps[0])
        raise DataError(f"gap of {diffs[i] // step - 1} interval(s) before line {rows[i + 1][2]}; "
                        "pass fill_gaps=True to forward-fill")
    filled = 0
    if gaps.size:
        grid = np.arange(ts[0], ts[-1] + step, step, dtype=np.int64)
        idx = np.searchsorted(ts, grid, side="right") - 1
        filled = int(grid.size - ts.size)
        ts, px = grid, px[idx]
    return PriceSeries(frequency, ts, px, filled=filled)


def resample(series: PriceSeries, target: str) -> PriceSeries:
    """Keep every k-th point (k = target / source), anchored at the first point."""
    if len(series) == 0:
        raise DataError("cannot resample an empty series")
    src, dst = frequency_ms(series.frequency), frequency_ms(target)
    if dst % src:
        raise DataError(f"{target} is not an integer multiple of {series.frequency}")
    k = dst // src
    return PriceSeries(target, series.timestamps[::k], series.prices[::k], filled=series.filled)


def changes(series: PriceSeries, kind: ChangeKind | str, scale: float = 100.0) -> ChangeSeries:
    kind = ChangeKind(kind)
    if len(series) < 2:
        raise DataError("need at least 2 prices to compute changes")
    if not scale > 0:
        raise ValueError("scale must be positive")
    prev, cur = series.prices[:-1], series.prices[1:]
    if kind is ChangeKind.STANDARD:
        vals = cur / prev - 1.0
    else:
        vals = 1.0 - prev / cur
    return ChangeSeries(kind, scale * vals, scale)


def summarize(values) -> SummaryStats:
    """Summary statistics of a change series (or any 1-d sequence)."""
    x = np.asarray(getattr(values, "values", values), dtype=float)
    n = x.size
    if n < 2:
        raise DataError("need at least 2 values to summarise")
    mean = float(x.mean())
    d = x - mean
    m2 = float(np.mean(d * d))
    if m2 > 0 and np.ptp(x) > 0:
        z = d / math.sqrt(m2)
        skew = float(np.mean(z ** 3))
        kurt = float(np.mean(z ** 4))
    else:
        skew = kurt = None
    p25, med, p75 = (float(v) for v in np.quantile(x, [0.25, 0.5, 0.75]))
    sd = float(np.std(x, ddof=1)) if skew is not None else 0.0
    return SummaryStats(float(x.min()), p25, med, mean, p75, float(x.max()),
                        skew, kurt, sd, n)
