"""Optimal margins from fitted tail distributions, with a normal baseline.

Every position uses the same closed form because the lower tail is fitted
on negated minima::

    MD(p) = mu + sigma / tau * ((-ln(1 - p)) ** (-tau) - 1)

i.e. the (1 - p)-quantile of the fitted extreme distribution. For a long
position, P(Min < -MD) = P(-Min > MD) = p under the negated-minima fit.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from . import gev
from .gev import GevParams


class Position(str, enum.Enum):
    SHORT = "short"
    LONG = "long"
    COMMON = "common"


# Short positions lose on the upper tail, longs on the lower tail.
POSITION_TAIL = {Position.SHORT: "right", Position.LONG: "left", Position.COMMON: "common"}
PANELS = {Position.SHORT: "A", Position.LONG: "B", Position.COMMON: "C"}


def _check_p(p):
    if not 0.0 < p < 1.0:
        raise ValueError(f"margin-call probability must lie strictly inside (0, 1), got {p}")


def optimal_margin(params: GevParams, p: float) -> float:
    """Margin (in the units of the fitted data) breached with probability ``p`` per block."""
    _check_p(p)
    return float(gev.quantile(params, 1.0 - p))


def margin_call_probability(params: GevParams, md: float) -> float:
    return float(gev.sf(params, md))


def normal_margin(mean: float, sd: float, p: float, position: Position | str) -> float:
    """Margin under a normal model of single-period changes.

    Short: P(X > M) = p, so M = mean + sd z_{1-p}.
    Long:  P(X < -M) = p, so M = sd z_{1-p} - mean.
    """
    _check_p(p)
    if not sd > 0:
        raise ValueError("sd must be positive")
    position = Position(position)
    z = float(norm.isf(p))
    if position is Position.SHORT:
        return mean + sd * z
    if position is Position.LONG:
        return sd * z - mean
    raise ValueError("normal baseline is defined for long and short positions only")


def leverage_equivalent(margin_pct: float) -> float:
    return 100.0 / margin_pct if margin_pct > 0 else math.inf


@dataclass(frozen=True)
class MarginRow:
    panel: str
    position: str
    kind: str
    frequency: str
    probability: float
    gev_margin: float
    normal_margin: float | None
    leverage: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def margin_table(fits: dict, moments: dict, probabilities, kinds=None, frequencies=None) -> list[MarginRow]:
    """Cross product of panels x kinds x frequencies x probabilities.

    ``fits`` maps ``(kind, frequency, tail)`` to :class:`GevParams` with tail
    in {"right", "left", "common"}; ``moments`` maps ``(kind, frequency)`` to
    ``(mean, sd)`` of the per-period changes in the same units. Missing
    moments leave the normal baseline empty.
    """
    probabilities = list(probabilities)
    if not probabilities:
        raise ValueError("no margin-call probabilities requested")
    for p in probabilities:
        _check_p(p)
    if kinds is None:
        kinds = list(dict.fromkeys(k for k, _, _ in fits))
    if frequencies is None:
        frequencies = list(dict.fromkeys(f for _, f, _ in fits))
    rows = []
    for position in Position:
        tail = POSITION_TAIL[position]
        for kind in kinds:
            for freq in frequencies:
                key = (kind, freq, tail)
                if key not in fits:
                    raise KeyError(f"missing fit for cell {key}")
                params = fits[key]
                mom = moments.get((kind, freq))
                for p in probabilities:
                    md = optimal_margin(params, p)
                    nm = None
                    if mom is not None and position is not Position.COMMON:
                        nm = normal_margin(mom[0], mom[1], p, position)
                    rows.append(MarginRow(PANELS[position], position.value, kind, freq,
                                          p, md, nm, leverage_equivalent(md)))
    return rows


def monte_carlo_exceedance(params: GevParams, md: float, n: int = 1_000_000,
                           seed: int | np.random.Generator = 0) -> tuple[float, float]:
    """Fraction of ``n`` simulated block extremes above ``md`` and its binomial s.e."""
    if n < 10_000:
        raise ValueError("use at least 10,000 draws")
    draws = gev.sample(params, n, seed)
    freq = float(np.count_nonzero(draws > md)) / n
    return freq, math.sqrt(freq * (1.0 - freq) / n)
