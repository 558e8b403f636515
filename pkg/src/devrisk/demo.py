"""The six-device study scenario: fixture loading and one-shot assessment.

The fixture set ships with the package (three private and three business
devices, plus purchase-comparison catalogs for smartphones and NAS). It
is constructed so the scoring rules yield Low/Medium/High for the private
devices and again for the business devices; fixtures/demo/oracle.csv
holds the hand-computed expectations.
"""

from __future__ import annotations

import json
from datetime import date
from importlib import resources
from pathlib import Path
from typing import Optional

from devrisk.model import DeviceRecord
from devrisk.service.engine import Engine

DEMO_DEVICE_ORDER = ("reader", "phone", "kettle", "cctv", "nas", "printer")


def fixtures_root() -> Path:
    return Path(str(resources.files("devrisk").joinpath("fixtures/demo")))


def demo_as_of(root: Optional[Path] = None) -> date:
    root = root or fixtures_root()
    meta = json.loads((root / "meta.json").read_text(encoding="utf-8"))
    return date.fromisoformat(meta["as_of"])


def load_demo_fixtures(engine: Engine, root: Optional[Path] = None) -> list[DeviceRecord]:
    """Ingest reference data and register the six study devices.

    Idempotent: re-registering returns the existing records.
    """
    root = root or fixtures_root()
    engine.ingest("signatures", str(root / "signatures.json"))
    engine.ingest("profiles", str(root / "profiles.json"))
    engine.ingest("manifests", str(root / "manifests.json"))
    engine.ingest("feed", str(root / "feed.json"))
    engine.ingest("catalog", str(root / "catalog.json"))

    devices = json.loads((root / "devices.json").read_text(encoding="utf-8"))
    records = []
    for dev in devices:
        record, _ = engine.register_device(
            network_address=dev["network_address"],
            category=dev["category"],
            device_type=dev["device_type"],
            owner=dev["owner"],
            corpus_path=str(root / dev["corpus"]),
            trace_path=str(root / dev["trace"]),
        )
        records.append(record)
    return records


def run_demo(engine: Engine, as_of: Optional[date] = None) -> list[dict]:
    """Load fixtures and assess all six devices; returns one dict per
    device in study order: {device, record}."""
    root = fixtures_root()
    records = load_demo_fixtures(engine, root)
    as_of = as_of or demo_as_of(root)
    out = []
    for record in records:
        assessment_record = engine.run_assessment(record.device_id, as_of)
        out.append(
            {"device": engine.get_device(record.device_id).to_dict(),
             "record": assessment_record}
        )
    return out
