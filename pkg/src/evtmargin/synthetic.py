"""Seeded synthetic inputs: heavy-tailed price paths and daily liquidation records."""
from __future__ import annotations

import csv
from datetime import date, timedelta

import numpy as np

from .analytics import OHLCV_HEADER
from .timeseries import format_timestamp, frequency_ms

START_MS = 1_483_228_800_000  # 2017-01-01T00:00:00Z


def random_walk_prices(n: int, seed: int, frequency: str = "5min",
                       start_price: float = 1000.0, vol: float = 0.003, df: float = 3.0):
    """Geometric random walk with Student-t log increments (unit variance scaled by ``vol``)."""
    rng = np.random.default_rng(seed)
    steps = rng.standard_t(df, size=n - 1) * vol * np.sqrt((df - 2.0) / df)
    prices = start_price * np.exp(np.concatenate([[0.0], np.cumsum(steps)]))
    ts = START_MS + frequency_ms(frequency) * np.arange(n, dtype=np.int64)
    return ts, prices


def write_price_csv(path, n: int = 50_000, seed: int = 7, frequency: str = "5min"):
    ts, prices = random_walk_prices(n, seed, frequency)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["timestamp", "price"])
        for t, p in zip(ts, prices):
            w.writerow([format_timestamp(int(t)), f"{p:.6f}"])


def write_ohlcv_csv(path, n_days: int = 372, seed: int = 11, first_day: date = date(2020, 1, 29)):
    """Daily OHLC from 288 five-minute steps per day, with volumes and liquidations."""
    rng = np.random.default_rng(seed)
    price = 9000.0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(OHLCV_HEADER)
        for i in range(n_days):
            path_ = price * np.exp(np.cumsum(rng.standard_t(3, size=288) * 0.0025 * np.sqrt(1 / 3)))
            o, c = price, float(path_[-1])
            hi, lo = max(o, float(path_.max())), min(o, float(path_.min()))
            oi = float(rng.uniform(5e8, 1.2e9))
            vol = oi * float(rng.lognormal(np.log(3.2), 0.45))
            long_liq = oi * abs(lo / o - 1.0) * float(rng.lognormal(0.0, 1.0))
            short_liq = oi * abs(hi / o - 1.0) * float(rng.lognormal(-0.5, 1.0))
            w.writerow([(first_day + timedelta(days=i)).isoformat(),
                        f"{o:.2f}", f"{hi:.2f}", f"{lo:.2f}", f"{c:.2f}",
                        f"{vol:.2f}", f"{oi:.2f}", f"{long_liq:.2f}", f"{short_liq:.2f}"])
            price = c
