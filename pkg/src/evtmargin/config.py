"""Run configuration: a single YAML key-value file.

Example::

    price_file: prices.csv        # timestamp,price
    price_frequency: 5min         # sampling interval of price_file
    ohlcv_file: ohlcv.csv         # optional daily liquidation records
    frequencies: [5min, 30min, 1h, 8h, 1d]
    block_sizes: {1d: 5}          # optional per-frequency overrides
    probabilities: [0.1, 0.05, 0.01, 0.001]
    scale: 100
    futures_kinds: [standard, perpetual]
    leverage_cap: 100
    seed: 20210206
    output_dir: out
    fill_gaps: false
    mc_draws: 1000000

Relative paths are resolved against the directory holding the config file.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import yaml

from .extremes import default_block_size
from .timeseries import FREQUENCIES_MS, ChangeKind


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    price_file: str
    output_dir: str = "out"
    price_frequency: str = "5min"
    ohlcv_file: str | None = None
    frequencies: tuple = ("5min", "30min", "1h", "8h", "1d")
    block_sizes: dict = field(default_factory=dict)
    probabilities: tuple = (0.1, 0.05, 0.01, 0.001)
    scale: float = 100.0
    futures_kinds: tuple = ("standard", "perpetual")
    leverage_cap: float = 100.0
    seed: int = 0
    fill_gaps: bool = False
    mc_draws: int = 1_000_000
    base_dir: str = "."

    def __post_init__(self):
        freqs = tuple(str(f) for f in self.frequencies)
        if not freqs:
            raise ConfigError("frequencies must not be empty")
        for f in freqs + (self.price_frequency,):
            if f not in FREQUENCIES_MS:
                raise ConfigError(f"unsupported frequency {f!r}")
        if len(set(freqs)) != len(freqs):
            raise ConfigError("duplicate frequencies")
        for f in freqs:
            if FREQUENCIES_MS[f] % FREQUENCIES_MS[self.price_frequency]:
                raise ConfigError(f"{f} is not a multiple of price_frequency {self.price_frequency}")
        probs = [float(p) for p in self.probabilities]
        if not probs:
            raise ConfigError("probabilities must not be empty")
        for p in probs:
            if not 0.0 < p < 1.0:
                raise ConfigError(f"probability {p} is outside (0, 1)")
        if len(set(probs)) != len(probs):
            raise ConfigError("duplicate probabilities")
        kinds = tuple(ChangeKind(str(k).lower()).value for k in self.futures_kinds)
        if not kinds or len(set(kinds)) != len(kinds):
            raise ConfigError("futures_kinds must be a non-empty set")
        blocks = {}
        for f, n in dict(self.block_sizes or {}).items():
            if str(f) not in FREQUENCIES_MS:
                raise ConfigError(f"block_sizes: unsupported frequency {f!r}")
            if int(n) < 2:
                raise ConfigError(f"block_sizes[{f}] must be at least 2")
            blocks[str(f)] = int(n)
        if not float(self.scale) > 0:
            raise ConfigError("scale must be positive")
        if not float(self.leverage_cap) > 1:
            raise ConfigError("leverage_cap must exceed 1")
        if int(self.mc_draws) < 10_000:
            raise ConfigError("mc_draws must be at least 10,000")
        set_ = lambda k, v: object.__setattr__(self, k, v)
        set_("frequencies", freqs)
        set_("probabilities", tuple(sorted(probs, reverse=True)))
        set_("futures_kinds", kinds)
        set_("block_sizes", blocks)
        set_("scale", float(self.scale))
        set_("leverage_cap", float(self.leverage_cap))
        set_("seed", int(self.seed))
        set_("mc_draws", int(self.mc_draws))

    def block_size(self, frequency: str) -> int:
        return self.block_sizes.get(frequency) or default_block_size(frequency)

    def path(self, name: str | None) -> Path | None:
        if name is None:
            return None
        p = Path(name)
        return p if p.is_absolute() else Path(self.base_dir) / p

    @property
    def out(self) -> Path:
        return self.path(self.output_dir)

    def canonical(self) -> dict:
        """Settings that determine outputs (paths to the run directory excluded)."""
        d = asdict(self)
        for k in ("output_dir", "base_dir"):
            d.pop(k)
        d["frequencies"] = list(d["frequencies"])
        d["probabilities"] = list(d["probabilities"])
        d["futures_kinds"] = list(d["futures_kinds"])
        return d

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def with_overrides(self, seed=None, output_dir=None) -> "RunConfig":
        changes = {}
        if seed is not None:
            changes["seed"] = seed
        if output_dir is not None:
            changes["output_dir"] = str(Path(output_dir).resolve())
        return replace(self, **changes)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a mapping")
    known = set(RunConfig.__dataclass_fields__) - {"base_dir"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "price_file" not in raw:
        raise ConfigError("price_file is required")
    try:
        return RunConfig(**raw, base_dir=str(path.parent.resolve()))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def derive_seed(seed: int, key: str) -> int:
    """Per-cell sub-seed: first 8 bytes of sha256("<seed>:<key>")."""
    h = hashlib.sha256(f"{seed}:{key}".encode()).digest()
    return int.from_bytes(h[:8], "big")
