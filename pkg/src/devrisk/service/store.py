"""Embedded single-file persistence with atomic writes.

One JSON document holds the registry, latest assessments, subscriptions
and the ingested reference data. Scale target is thousands of devices;
every mutation rewrites the file through a temp-file rename so a crash
never leaves a torn store behind.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from pathlib import Path
from typing import Optional, Union

_EMPTY_STATE: dict = {
    "devices": {},
    "device_order": [],
    "evidence": {},
    "assessments": {},
    "subscriptions": {},
    "signatures": [],
    "profiles": [],
    "manifests": {"manifests": [], "aliases": []},
    "feed": [],
    "catalog": {},
}


class Store:
    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._lock = threading.RLock()
        if self.path.exists():
            self._state = json.loads(self.path.read_text(encoding="utf-8"))
            for key, default in _EMPTY_STATE.items():
                self._state.setdefault(key, json.loads(json.dumps(default)))
        else:
            self._state = json.loads(json.dumps(_EMPTY_STATE))

    def _persist(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(self.path.suffix + f".tmp-{os.getpid()}")
        tmp.write_text(
            json.dumps(self._state, indent=2, ensure_ascii=False), encoding="utf-8"
        )
        os.replace(tmp, self.path)

    def mutate(self, fn) -> None:
        """Apply fn(state) under the writer lock and persist atomically."""
        with self._lock:
            fn(self._state)
            self._persist()

    def snapshot(self, key: str):
        with self._lock:
            return json.loads(json.dumps(self._state[key]))

    # -- devices ---------------------------------------------------------

    def find_device_id(self, network_address: str, owner: str) -> Optional[str]:
        with self._lock:
            for did, rec in self._state["devices"].items():
                if rec["network_address"] == network_address and rec["owner"] == owner:
                    return did
        return None

    def new_device_id(self) -> str:
        return f"dev-{uuid.uuid4().hex[:12]}"

    def get_device(self, device_id: str) -> Optional[dict]:
        with self._lock:
            rec = self._state["devices"].get(device_id)
            return json.loads(json.dumps(rec)) if rec else None

    def put_device(self, rec: dict, evidence: Optional[dict] = None) -> None:
        def apply(state):
            did = rec["device_id"]
            if did not in state["devices"]:
                state["device_order"].append(did)
            state["devices"][did] = rec
            if evidence is not None:
                state["evidence"][did] = evidence

        self.mutate(apply)

    def devices_in_order(self) -> list[dict]:
        with self._lock:
            return [
                json.loads(json.dumps(self._state["devices"][did]))
                for did in self._state["device_order"]
                if did in self._state["devices"]
            ]

    def evidence_for(self, device_id: str) -> dict:
        with self._lock:
            return dict(self._state["evidence"].get(device_id, {}))

    # -- assessments -----------------------------------------------------

    def get_assessment_record(self, device_id: str) -> Optional[dict]:
        with self._lock:
            rec = self._state["assessments"].get(device_id)
            return json.loads(json.dumps(rec)) if rec else None

    def put_assessment_record(self, device_id: str, record: dict) -> None:
        self.mutate(lambda s: s["assessments"].__setitem__(device_id, record))

    # -- subscriptions ----------------------------------------------------

    def put_subscription(self, sub: dict) -> None:
        self.mutate(lambda s: s["subscriptions"].__setitem__(sub["subscription_id"], sub))

    def delete_subscription(self, sub_id: str) -> bool:
        found = []

        def apply(state):
            found.append(state["subscriptions"].pop(sub_id, None) is not None)

        self.mutate(apply)
        return found[0]

    def subscriptions(self) -> list[dict]:
        with self._lock:
            return [dict(v) for v in self._state["subscriptions"].values()]

    # -- reference data ----------------------------------------------------

    def set_reference(self, key: str, value) -> None:
        assert key in ("signatures", "profiles", "manifests", "feed", "catalog")
        self.mutate(lambda s: s.__setitem__(key, value))
