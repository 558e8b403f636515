#!/usr/bin/env python3
"""Export service view payloads for the frontend test suite.

Runs the demo scenario in a throwaway store and dumps the JSON bodies the
frontend consumes into frontend/fixtures/. Keeping the frontend tests on
real payloads is what enforces the "no risk text synthesized client-side"
rule.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from devrisk.demo import demo_as_of, run_demo  # noqa: E402
from devrisk.service.engine import Engine  # noqa: E402
from devrisk.service.store import Store  # noqa: E402

OUT = REPO / "frontend" / "fixtures"


def write(name: str, payload) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    print(f"wrote frontend/fixtures/{name}")


def main() -> None:
    with tempfile.TemporaryDirectory() as td:
        engine = Engine(Store(Path(td) / "store.json"), data_dir=td)
        results = run_demo(engine)
        by_type = {r["device"]["device_type"]: r["device"]["device_id"] for r in results}
        as_of = demo_as_of()

        write("guided_kettle.json", engine.get_view(by_type["Smart Kettle"], "guided"))
        write("guided_reader.json", engine.get_view(by_type["E-Book Reader"], "guided"))
        write("guided_phone.json", engine.get_view(by_type["Smartphone"], "guided"))
        write("rich_kettle.json", engine.get_view(by_type["Smart Kettle"], "rich"))
        write("rich_phone.json", engine.get_view(by_type["Smartphone"], "rich"))
        write(
            "compare_smartphone.json",
            {"category": "smartphone", "cards": engine.compare_category("smartphone", as_of)},
        )
        write(
            "compare_nas.json",
            {"category": "nas", "cards": engine.compare_category("nas", as_of)},
        )
        write("devices.json", {"devices": engine.list_devices()})


if __name__ == "__main__":
    main()
