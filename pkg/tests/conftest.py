import csv
import json
from pathlib import Path

import pytest

from devrisk.demo import demo_as_of, fixtures_root, run_demo
from devrisk.service.engine import Engine
from devrisk.service.store import Store


def make_engine(tmp_dir: Path) -> Engine:
    tmp_dir = Path(tmp_dir)
    tmp_dir.mkdir(parents=True, exist_ok=True)
    return Engine(Store(tmp_dir / "store.json"), data_dir=tmp_dir)


@pytest.fixture
def engine(tmp_path):
    return make_engine(tmp_path)


@pytest.fixture(scope="session")
def demo_results(tmp_path_factory):
    """The six-device scenario, loaded and assessed once per test session."""
    data_dir = tmp_path_factory.mktemp("demo-data")
    engine = make_engine(data_dir)
    results = run_demo(engine)
    return {"engine": engine, "results": results, "as_of": demo_as_of()}


@pytest.fixture(scope="session")
def oracle_rows():
    """Hand-computed expectations shipped next to the fixtures."""
    path = fixtures_root() / "oracle.csv"
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.DictReader(line for line in fh if not line.startswith("#"))]
    return {r["key"]: r for r in rows}


@pytest.fixture(scope="session")
def schemas():
    root = Path(str(fixtures_root())).parents[1] / "schemas"
    return {
        "assessment": json.loads((root / "assessment.json").read_text()),
        "views": json.loads((root / "views.json").read_text()),
    }
