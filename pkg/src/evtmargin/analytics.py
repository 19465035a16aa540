"""Inverse-contract payoffs, liquidation triggers and daily leverage analytics.

Inverse (coin-settled) contracts pay ``notional / F_enter - notional / F_exit``
coins on a long position. Daily metrics assume positions open at the day's
open and are liquidated at the day's low (long) or high (short).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import date
from pathlib import Path

import numpy as np

from .margins import Position
from .timeseries import DataError

DEFAULT_LEVERAGE_CAP = 100.0

OHLCV_HEADER = ["date", "open", "high", "low", "close", "volume",
                "open_interest", "long_liq", "short_liq"]
TABLE4_COLUMNS = ("r_min", "r_max", "long liq.(M)", "short liq.(M)", "SI",
                  "p_long(%)", "p_short(%)", "L_long", "L_short")
TABLE4_ROWS = ("min", "median", "mean", "max", "Nobs")


def _position(position) -> Position:
    position = Position(position)
    if position is Position.COMMON:
        raise ValueError("payoffs are defined for long and short positions")
    return position


def payoff(position, notional: float, f_enter: float, f_exit: float) -> float:
    """Coin-denominated profit of an inverse contract."""
    if not (f_enter > 0 and f_exit > 0):
        raise ValueError("prices must be positive")
    if not notional > 0:
        raise ValueError("notional must be positive")
    long_pnl = notional / f_enter - notional / f_exit
    return long_pnl if _position(position) is Position.LONG else -long_pnl


def trigger_price(position, f_enter: float, leverage: float) -> float:
    """Price at which the loss exactly consumes a margin of 1/leverage (in coin terms)."""
    position = _position(position)
    if not f_enter > 0:
        raise ValueError("price must be positive")
    if position is Position.LONG:
        if not leverage > 0:
            raise ValueError("leverage must be positive")
        return f_enter * leverage / (leverage + 1.0)
    if not leverage > 1:
        raise ValueError("no finite liquidation price for a short with leverage <= 1")
    return f_enter * leverage / (leverage - 1.0)


@dataclass(frozen=True)
class LiquidationDay:
    date: date
    open: float
    high: float
    low: float
    close: float
    volume: float
    open_interest: float
    long_liq: float = 0.0
    short_liq: float = 0.0

    def __post_init__(self):
        if min(self.open, self.high, self.low, self.close) <= 0:
            raise DataError(f"{self.date}: prices must be positive")
        if not (self.low <= min(self.open, self.close) and max(self.open, self.close) <= self.high):
            raise DataError(f"{self.date}: OHLC prices are inconsistent")
        if not self.open_interest > 0:
            raise DataError(f"{self.date}: open interest must be positive")
        if self.volume < 0 or self.long_liq < 0 or self.short_liq < 0:
            raise DataError(f"{self.date}: volumes must be non-negative")


@dataclass(frozen=True)
class DayMetrics:
    date: date
    r_max: float
    r_min: float
    si: float
    p_long: float
    p_short: float
    lev_long: float
    lev_short: float
    long_at_cap: bool
    short_at_cap: bool


def extreme_returns(day: LiquidationDay) -> tuple[float, float]:
    """(r_min, r_max) relative to the day's open."""
    return (day.low - day.open) / day.open, (day.high - day.open) / day.open


def raw_leverage(day: LiquidationDay) -> tuple[float, float]:
    """Uncapped implied leverages; a flat side (zero return) gives ``inf``."""
    r_min, r_max = extreme_returns(day)
    lev_long = -(1.0 + r_min) / r_min if r_min < 0 else math.inf
    lev_short = (1.0 + r_max) / r_max if r_max > 0 else math.inf
    return lev_long, lev_short


def implied_leverage(day: LiquidationDay, cap: float = DEFAULT_LEVERAGE_CAP) -> tuple[float, float]:
    """Leverage at which the day's extreme move would just trigger liquidation, capped."""
    if not cap > 1:
        raise ValueError("leverage cap must exceed 1")
    lev_long, lev_short = raw_leverage(day)
    return min(lev_long, cap), min(lev_short, cap)


def speculation_index(day: LiquidationDay) -> float:
    if not day.open_interest > 0:
        raise DataError("open interest must be positive")
    return day.volume / day.open_interest


def liquidation_percentages(day: LiquidationDay) -> tuple[float, float]:
    """Long and short liquidation volume as fractions of open interest."""
    if not day.open_interest > 0:
        raise DataError("open interest must be positive")
    return day.long_liq / day.open_interest, day.short_liq / day.open_interest


def day_metrics(day: LiquidationDay, cap: float = DEFAULT_LEVERAGE_CAP) -> DayMetrics:
    r_min, r_max = extreme_returns(day)
    lev_long, lev_short = implied_leverage(day, cap)
    raw_long, raw_short = raw_leverage(day)
    lc, sc = raw_long >= cap, raw_short >= cap
    p_long, p_short = liquidation_percentages(day)
    return DayMetrics(day.date, r_max, r_min, speculation_index(day), p_long, p_short,
                      lev_long, lev_short, lc, sc)


def analytics_summary(days, cap: float = DEFAULT_LEVERAGE_CAP) -> dict:
    """min/median/mean/max/Nobs for each published column.

    Liquidation volumes are reported in millions of USD and liquidation
    ratios in percent; everything else is in natural units. The result maps
    column name -> row name -> value, plus an ``at_cap`` count entry.
    """
    days = list(days)
    if not days:
        raise DataError("analytics summary needs at least one day")
    ms = [day_metrics(d, cap) for d in days]
    cols = {
        "r_min": [m.r_min for m in ms],
        "r_max": [m.r_max for m in ms],
        "long liq.(M)": [d.long_liq / 1e6 for d in days],
        "short liq.(M)": [d.short_liq / 1e6 for d in days],
        "SI": [m.si for m in ms],
        "p_long(%)": [100 * m.p_long for m in ms],
        "p_short(%)": [100 * m.p_short for m in ms],
        "L_long": [m.lev_long for m in ms],
        "L_short": [m.lev_short for m in ms],
    }
    table = {}
    for name, vals in cols.items():
        a = np.sort(np.asarray(vals, dtype=float))
        table[name] = {"min": float(a[0]), "median": float(np.median(a)),
                       "mean": float(np.mean(a)), "max": float(a[-1]), "Nobs": int(a.size)}
    table["at_cap"] = {"L_long": sum(m.long_at_cap for m in ms),
                       "L_short": sum(m.short_at_cap for m in ms)}
    return table


def load_ohlcv_csv(path) -> list[LiquidationDay]:
    days = []
    with open(Path(path), newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != OHLCV_HEADER:
            raise DataError(f"{path}: expected header {','.join(OHLCV_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(OHLCV_HEADER):
                raise DataError(f"malformed row at line {lineno}")
            try:
                d = date.fromisoformat(row[0].strip())
                nums = [float(v) for v in row[1:]]
            except ValueError as exc:
                raise DataError(f"malformed row at line {lineno}: {exc}") from None
            try:
                days.append(LiquidationDay(d, *nums))
            except DataError as exc:
                raise DataError(f"line {lineno}: {exc}") from None
    days.sort(key=lambda d: d.date)
    for a, b in zip(days, days[1:]):
        if a.date == b.date:
            raise DataError(f"duplicate date {a.date}")
    return days
