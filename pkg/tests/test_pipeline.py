import csv
import hashlib
import json

import pytest
import yaml

from evtmargin import cli
from evtmargin.config import ConfigError, RunConfig, derive_seed, load_config
from evtmargin.gev import GevParams


def write_config(path, **overrides):
    cfg = {"price_file": "prices.csv", "ohlcv_file": "ohlcv.csv", "block_sizes": {"1d": 5},
           "seed": 42, "output_dir": "out", "mc_draws": 200_000}
    cfg.update(overrides)
    path.write_text(yaml.safe_dump(cfg))
    return path


@pytest.fixture
def workdir(tmp_path, synthetic_inputs):
    for name in ("prices.csv", "ohlcv.csv"):
        (tmp_path / name).write_bytes((synthetic_inputs / name).read_bytes())
    return tmp_path


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_run_writes_all_tables(workdir):
    cfg = write_config(workdir / "run.yaml")
    assert cli.main(["run", "-c", str(cfg)]) == 0
    out = workdir / "out"
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["status"] == "ok"
    for n in range(1, 5):
        assert f"table{n}.csv" in manifest["files"] and f"table{n}.json" in manifest["files"]
    assert "cdf_perpetual_5min_right.csv" in manifest["files"]
    for name, digest in manifest["files"].items():
        data = (out / name).read_bytes()
        assert hashlib.sha256(data).hexdigest() == digest
        if name.endswith(".json"):
            json.loads(data)
        else:
            rows = read_csv(out / name)
            assert len({len(r) for r in rows}) == 1
    t1 = read_csv(out / "table1.csv")
    assert [r[0] for r in t1[1:]] == ["Min", "P25", "Median", "Mean", "P75", "Max",
                                      "Skewness", "Kurtosis", "S.D.", "Nobs"]
    t2 = json.loads((out / "table2.json").read_text())
    assert len(t2) == 30
    for row in t2:
        GevParams.from_dict(row)
    t3 = json.loads((out / "table3.json").read_text())
    assert len(t3) == 3 * 2 * 5 * 4
    assert read_csv(out / "cdf_standard_1h_left.csv")[0] == ["x", "empirical_cdf", "fitted_cdf"]
    assert read_csv(out / "table4.csv")[0][1:] == ["r_min", "r_max", "long liq.(M)", "short liq.(M)",
                                                   "SI", "p_long(%)", "p_short(%)", "L_long", "L_short"]


def test_run_twice_identical(workdir, tmp_path_factory):
    cfg = write_config(workdir / "run.yaml")
    a, b = tmp_path_factory.mktemp("a"), tmp_path_factory.mktemp("b")
    assert cli.main(["run", "-c", str(cfg), "--output-dir", str(a)]) == 0
    assert cli.main(["run", "-c", str(cfg), "--output-dir", str(b)]) == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes(), n


def test_invalid_probability_rejected_before_work(workdir):
    cfg = write_config(workdir / "run.yaml", probabilities=[0.1, 1.5])
    assert cli.main(["run", "-c", str(cfg)]) == 1
    assert not (workdir / "out").exists()


def test_verify_before_run(workdir, capsys):
    cfg = write_config(workdir / "run.yaml")
    assert cli.main(["verify", "-c", str(cfg)]) == 1
    assert "no run artifacts" in capsys.readouterr().err


def test_verify_passes_and_detects_tampering(workdir):
    cfg = write_config(workdir / "run.yaml", frequencies=["1h"], futures_kinds=["perpetual"],
                       mc_draws=1_000_000)
    assert cli.main(["margins", "-c", str(cfg)]) == 0
    assert cli.main(["verify", "-c", str(cfg)]) == 0
    report = json.loads((workdir / "out" / "verify.json").read_text())
    assert report["passed"] and report["n_cells"] == 12
    assert max(c["roundtrip_residual"] for c in report["cells"]) < 1e-10

    t3 = workdir / "out" / "table3.json"
    rows = json.loads(t3.read_text())
    target = next(r for r in rows if r["position"] == "long" and r["probability"] == 0.01)
    target["gev_margin"] += 1.0
    t3.write_text(json.dumps(rows))
    assert cli.main(["verify", "-c", str(cfg)]) == 3
    report = json.loads((workdir / "out" / "verify.json").read_text())
    failed = [(c["position"], c["probability"]) for c in report["cells"] if not c["passed"]]
    assert failed == [("long", 0.01)]


def test_failure_manifest(workdir):
    # 1d with the default 10-observation blocks leaves too few extremes to fit.
    cfg = write_config(workdir / "run.yaml", block_sizes={}, frequencies=["1h", "1d"])
    assert cli.main(["run", "-c", str(cfg)]) == 2
    manifest = json.loads((workdir / "out" / "manifest.json").read_text())
    assert manifest["status"] == "failed"
    assert manifest["error"]["cell"][:2] == ["standard", "1d"]


def test_subcommands(workdir):
    cfg = write_config(workdir / "run.yaml", frequencies=["8h"])
    assert cli.main(["summarize", "-c", str(cfg), "--output-dir", str(workdir / "s")]) == 0
    assert sorted(p.name for p in (workdir / "s").iterdir()) == ["manifest.json", "table1.csv", "table1.json"]
    assert cli.main(["analytics", "-c", str(cfg), "--output-dir", str(workdir / "a")]) == 0
    assert (workdir / "a" / "table4.json").exists() and (workdir / "a" / "speculation.csv").exists()
    assert cli.main(["fit", "-c", str(cfg), "--output-dir", str(workdir / "f")]) == 0
    assert (workdir / "f" / "cdf_standard_8h_common.csv").exists()


def test_missing_price_file(workdir):
    cfg = write_config(workdir / "run.yaml", price_file="nope.csv")
    assert cli.main(["run", "-c", str(cfg)]) == 1


def test_seed_override_changes_hash_only(workdir):
    cfg = write_config(workdir / "run.yaml", frequencies=["8h"])
    cli.main(["run", "-c", str(cfg), "--output-dir", str(workdir / "x")])
    cli.main(["run", "-c", str(cfg), "--seed", "7", "--output-dir", str(workdir / "y")])
    mx = json.loads((workdir / "x" / "manifest.json").read_text())
    my = json.loads((workdir / "y" / "manifest.json").read_text())
    assert my["seed"] == 7 and mx["config_hash"] != my["config_hash"]
    assert mx["files"]["table2.json"] == my["files"]["table2.json"]


def test_config_validation(tmp_path):
    with pytest.raises(ConfigError):
        RunConfig(price_file="p.csv", frequencies=())
    with pytest.raises(ConfigError):
        RunConfig(price_file="p.csv", probabilities=(0.1, 0.1))
    with pytest.raises(ConfigError):
        RunConfig(price_file="p.csv", frequencies=("15min",))
    c = RunConfig(price_file="p.csv", probabilities=(0.01, 0.1, 0.05))
    assert c.probabilities == (0.1, 0.05, 0.01)
    p = tmp_path / "c.yaml"
    p.write_text("price_file: p.csv\nbogus: 1\n")
    with pytest.raises(ConfigError, match="unknown"):
        load_config(p)


def test_derived_seeds_are_independent_of_other_cells():
    assert derive_seed(1, "perpetual/1d/left") == derive_seed(1, "perpetual/1d/left")
    assert derive_seed(1, "perpetual/1d/left") != derive_seed(1, "perpetual/1d/right")
    assert derive_seed(1, "a") != derive_seed(2, "a")
