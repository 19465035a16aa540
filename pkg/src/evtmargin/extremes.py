"""Non-overlapping block maxima/minima."""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .timeseries import DataError, frequency_ms

# Block spans: 8h for 5min, 24h for 30min, 48h for 1h, 5 days for 8h, 10 days for 1d.
DEFAULT_BLOCK_SIZES = {"5min": 96, "30min": 48, "1h": 48, "8h": 15, "1d": 10}


@dataclass(frozen=True)
class BlockExtremes:
    block_size: int
    maxima: np.ndarray
    minima: np.ndarray

    @property
    def common(self) -> np.ndarray:
        """Pooled set ``(-min_1, ..., -min_m, max_1, ..., max_m)``.

        Minima are negated rather than made absolute, so a block whose
        minimum is positive contributes a negative value.
        """
        return np.concatenate([-self.minima, self.maxima])

    @property
    def neg_minima(self) -> np.ndarray:
        return -self.minima

    def __len__(self):
        return self.maxima.size

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["block_index", "min", "max"])
            for i, (lo, hi) in enumerate(zip(self.minima, self.maxima)):
                w.writerow([i, repr(float(lo)), repr(float(hi))])


def block_extremes(values, block_size: int) -> BlockExtremes:
    """Split into consecutive blocks of ``block_size``; the short tail is dropped."""
    x = np.asarray(getattr(values, "values", values), dtype=float)
    block_size = int(block_size)
    if block_size < 2:
        raise ValueError("block_size must be at least 2")
    m = x.size // block_size
    if m == 0:
        raise DataError(f"series of length {x.size} is shorter than one block ({block_size})")
    blocks = x[: m * block_size].reshape(m, block_size)
    mx, mn = blocks.max(axis=1), blocks.min(axis=1)
    mx.setflags(write=False)
    mn.setflags(write=False)
    return BlockExtremes(block_size, mx, mn)


def default_block_size(frequency: str) -> int:
    frequency_ms(frequency)  # validates
    return DEFAULT_BLOCK_SIZES[frequency]
