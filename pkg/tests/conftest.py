from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings


settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("fast", max_examples=25, deadline=None)
settings.load_profile("ci")


@pytest.fixture
def write_prices(tmp_path):
    def _write(rows, name="prices.csv"):
        p = tmp_path / name
        p.write_text("timestamp,price\n" + "".join(f"{t},{v}\n" for t, v in rows))
        return p
    return _write


DATA = Path(__file__).parent / "data"
ACCEPTANCE = []


@pytest.fixture(scope="session")
def synthetic_inputs():
    return DATA


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""
    def _record(criterion, ok, detail):
        ACCEPTANCE.append((criterion, bool(ok), detail))
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20210206)
