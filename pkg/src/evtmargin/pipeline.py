"""End-to-end table generation and Monte Carlo verification."""
from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import dataclass
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from . import analytics, gev, margins
from .config import ConfigError, RunConfig, derive_seed
from .extremes import block_extremes
from .timeseries import TABLE1_ROWS, changes, load_price_csv, resample, summarize

log = logging.getLogger(__name__)

TAILS = ("right", "left", "common")
TAIL_PANELS = {"right": "A", "left": "B", "common": "C"}
GEV_FIELDS = ("tau", "sigma", "mu", "se_tau", "se_sigma", "se_mu", "n_fit", "loglik")
TABLE3_FIELDS = ("panel", "position", "kind", "frequency", "probability",
                 "gev_margin", "normal_margin", "leverage")


class PipelineError(RuntimeError):
    """A computation failed; ``cell`` names the (kind, frequency, tail) involved."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class VerificationError(RuntimeError):
    pass


def package_version() -> str:
    try:
        return version("evtmargin")
    except PackageNotFoundError:
        return "unknown"


def _num(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ""
    return str(v)


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_safe(x) for x in v]
    return v


class _Writer:
    """Serialises all output through one place so the manifest sees every file."""

    def __init__(self, out: Path):
        self.out = out
        out.mkdir(parents=True, exist_ok=True)
        self.files: dict[str, str] = {}

    def _record(self, name, data: bytes):
        (self.out / name).write_bytes(data)
        self.files[name] = hashlib.sha256(data).hexdigest()

    def json(self, name, obj):
        self._record(name, (json.dumps(_json_safe(obj), indent=2) + "\n").encode())

    def csv(self, name, header, rows):
        lines = [",".join(header)]
        lines += [",".join(_num(v) for v in row) for row in rows]
        self._record(name, ("\n".join(lines) + "\n").encode())


@dataclass
class _State:
    stats: dict       # (kind, freq) -> SummaryStats of unscaled changes
    extremes: dict    # (kind, freq) -> BlockExtremes of scaled changes
    fits: dict        # (kind, freq, tail) -> GevParams
    filled: int


def _tail_data(ext, tail):
    return {"right": ext.maxima, "left": ext.neg_minima, "common": ext.common}[tail]


def _prepare(config: RunConfig, need_fits: bool) -> _State:
    series = load_price_csv(config.path(config.price_file), config.price_frequency,
                            fill_gaps=config.fill_gaps)
    stats, exts, fits = {}, {}, {}
    for freq in config.frequencies:
        sampled = resample(series, freq)
        for kind in config.futures_kinds:
            raw = changes(sampled, kind, scale=1.0)
            stats[(kind, freq)] = summarize(raw)
            if not need_fits:
                continue
            scaled = changes(sampled, kind, scale=config.scale)
            try:
                ext = block_extremes(scaled, config.block_size(freq))
            except ValueError as exc:
                raise PipelineError(f"block extraction failed for {kind}/{freq}: {exc}",
                                    (kind, freq, None)) from exc
            exts[(kind, freq)] = ext
            for tail in TAILS:
                try:
                    fits[(kind, freq, tail)] = gev.fit(_tail_data(ext, tail))
                except (ValueError, RuntimeError) as exc:
                    raise PipelineError(f"GEV fit failed for {kind}/{freq}/{tail}: {exc}",
                                        (kind, freq, tail)) from exc
                log.info("fitted %s/%s/%s", kind, freq, tail)
    return _State(stats, exts, fits, series.filled)


def _write_table1(w: _Writer, config, state):
    cols = [(k, f) for k in config.futures_kinds for f in config.frequencies]
    rows = []
    for name in TABLE1_ROWS:
        rows.append([name] + [state.stats[c].as_row()[name] for c in cols])
    w.csv("table1.csv", ["statistic"] + [f"{k}_{f}" for k, f in cols], rows)
    w.json("table1.json", {k: {f: state.stats[(k, f)].as_row() for f in config.frequencies}
                           for k in config.futures_kinds})


def _table2_rows(config, state):
    rows = []
    for tail in TAILS:
        for kind in config.futures_kinds:
            for freq in config.frequencies:
                p = state.fits[(kind, freq, tail)]
                d = p.to_dict()
                rows.append({"panel": TAIL_PANELS[tail], "tail": tail, "kind": kind,
                             "frequency": freq, "block_size": config.block_size(freq),
                             **{k: d[k] for k in GEV_FIELDS}})
    return rows


def _write_table2(w: _Writer, config, state):
    rows = _table2_rows(config, state)
    header = list(rows[0])
    w.csv("table2.csv", header, [[r[h] for h in header] for r in rows])
    w.json("table2.json", rows)
    for (kind, freq, tail), params in state.fits.items():
        x = np.sort(_tail_data(state.extremes[(kind, freq)], tail))
        ecdf = np.arange(1, x.size + 1) / x.size
        fitted = gev.cdf(params, x)
        w.csv(f"cdf_{kind}_{freq}_{tail}.csv", ["x", "empirical_cdf", "fitted_cdf"],
              [[float(a), float(b), float(c)] for a, b, c in zip(x, ecdf, fitted)])


def _write_table3(w: _Writer, config, state):
    moments = {key: (s.mean * config.scale, s.sd * config.scale) for key, s in state.stats.items()
               if s.sd > 0}
    rows = margins.margin_table(state.fits, moments, config.probabilities,
                                kinds=config.futures_kinds, frequencies=config.frequencies)
    w.csv("table3.csv", TABLE3_FIELDS, [[getattr(r, f) for f in TABLE3_FIELDS] for r in rows])
    w.json("table3.json", [r.as_dict() for r in rows])


def _write_table4(w: _Writer, config):
    days = analytics.load_ohlcv_csv(config.path(config.ohlcv_file))
    table = analytics.analytics_summary(days, config.leverage_cap)
    cols = analytics.TABLE4_COLUMNS
    w.csv("table4.csv", ["statistic"] + list(cols),
          [[r] + [table[c][r] for c in cols] for r in analytics.TABLE4_ROWS])
    w.json("table4.json", table)
    ms = [analytics.day_metrics(d, config.leverage_cap) for d in days]
    w.csv("speculation.csv", ["date", "si", "p_long", "p_short"],
          [[m.date.isoformat(), m.si, m.p_long, m.p_short] for m in ms])
    return table["at_cap"]


STAGES = ("summarize", "fit", "margins", "analytics")


def run_pipeline(config: RunConfig, stages=STAGES) -> dict:
    """Compute the requested tables into ``config.out`` and write ``manifest.json``.

    Outputs depend only on the config (minus its output location) and the
    input files, so repeated runs are byte-identical. On failure the files
    already produced are kept and the manifest records the failing cell.
    """
    stages = tuple(stages)
    w = _Writer(config.out)
    manifest = {"status": "ok", "config_hash": config.digest(), "seed": config.seed,
                "version": package_version(), "config": config.canonical(),
                "inputs": {}, "stages": list(stages)}
    try:
        for name in ("price_file", "ohlcv_file"):
            p = config.path(getattr(config, name))
            if p is not None and (name == "price_file" or "analytics" in stages):
                manifest["inputs"][name] = hashlib.sha256(p.read_bytes()).hexdigest()
        if {"summarize", "fit", "margins"} & set(stages):
            state = _prepare(config, need_fits=bool({"fit", "margins"} & set(stages)))
            manifest["filled_gaps"] = state.filled
            if "summarize" in stages:
                _write_table1(w, config, state)
            if "fit" in stages:
                _write_table2(w, config, state)
            if "margins" in stages:
                _write_table3(w, config, state)
        if "analytics" in stages:
            if config.ohlcv_file is None:
                if stages != STAGES:
                    raise ConfigError("analytics requested but no ohlcv_file configured")
            else:
                manifest["leverage_at_cap"] = _write_table4(w, config)
    except Exception as exc:
        manifest["status"] = "failed"
        manifest["error"] = {"message": str(exc),
                             "cell": list(getattr(exc, "cell", None) or []) or None}
        manifest["files"] = dict(w.files)
        w.json("manifest.json", manifest)
        raise
    manifest["files"] = dict(w.files)
    w.json("manifest.json", manifest)
    return manifest


def _load_run(out: Path):
    need = ("manifest.json", "table2.json", "table3.json")
    if not all((out / n).exists() for n in need):
        raise VerificationError(f"no run artifacts in {out}")
    table2 = json.loads((out / "table2.json").read_text())
    table3 = json.loads((out / "table3.json").read_text())
    fits = {(r["kind"], r["frequency"], r["tail"]): gev.GevParams.from_dict(r) for r in table2}
    return fits, table3


def verify(config: RunConfig) -> dict:
    """Check every stored margin by simulation and quantile/cdf roundtrip.

    Each (kind, frequency, tail) cell gets one stream of ``mc_draws`` extremes
    seeded by :func:`derive_seed`; a margin passes when its exceedance
    frequency is within three binomial standard errors of its probability.
    """
    out = config.out
    fits, table3 = _load_run(out)
    n = config.mc_draws
    draws = {}
    cells = []
    for row in table3:
        tail = margins.POSITION_TAIL[margins.Position(row["position"])]
        key = (row["kind"], row["frequency"], tail)
        if key not in fits:
            raise VerificationError(f"table3 cell {key} has no fitted parameters")
        params = fits[key]
        if key not in draws:
            seed = derive_seed(config.seed, "/".join(key))
            draws[key] = gev.sample(params, n, seed)
        p, md = row["probability"], row["gev_margin"]
        freq = float(np.count_nonzero(draws[key] > md)) / n
        se = math.sqrt(p * (1 - p) / n)
        q = 1.0 - p
        roundtrip = abs(gev.cdf(params, gev.quantile(params, q)) - q)
        cells.append({"kind": key[0], "frequency": key[1], "tail": tail,
                      "position": row["position"], "probability": p, "gev_margin": md,
                      "mc_frequency": freq, "mc_stderr": se,
                      "z": (freq - p) / se, "passed": abs(freq - p) <= 3 * se,
                      "call_probability_residual": abs(margins.margin_call_probability(params, md) - p),
                      "roundtrip_residual": roundtrip})
    report = {"draws": n, "seed": config.seed, "passed": all(c["passed"] for c in cells),
              "n_cells": len(cells), "n_failed": sum(not c["passed"] for c in cells),
              "cells": cells}
    (out / "verify.json").write_text(json.dumps(report, indent=2) + "\n")
    return report
