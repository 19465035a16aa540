"""Extreme-value margin setting for linear and inverse (coin-settled) futures."""
from .gev import GevParams
from .margins import Position, margin_call_probability, normal_margin, optimal_margin
from .timeseries import ChangeKind

__all__ = ["GevParams", "Position", "ChangeKind", "optimal_margin",
           "margin_call_probability", "normal_margin"]
