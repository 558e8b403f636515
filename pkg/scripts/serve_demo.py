#!/usr/bin/env python3
"""Start the HTTP service with the six-device demo scenario pre-loaded
and pre-assessed. Handy for frontend development.

Usage: python3 scripts/serve_demo.py [--data-dir ./data] [--port 8787]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import uvicorn  # noqa: E402

from devrisk.demo import run_demo  # noqa: E402
from devrisk.service.app import create_app  # noqa: E402
from devrisk.service.engine import Engine  # noqa: E402
from devrisk.service.store import Store  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", default="./data")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8787)
    args = parser.parse_args()

    data_dir = Path(args.data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    engine = Engine(Store(data_dir / "store.json"), data_dir=data_dir)
    results = run_demo(engine)
    for r in results:
        a = r["record"].get("assessment") or {}
        print(f"loaded {r['device']['device_type']}: {a.get('current_risk', 'n/a')}")
    app = create_app(engine)
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
