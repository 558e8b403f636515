"""Assessment orchestration over the store: registration, the
identify -> enrich -> score pipeline, views, comparison, subscriptions.

The engine is transport-agnostic; the HTTP app and the CLI both drive it,
which is also what keeps their JSON output identical.
"""

from __future__ import annotations

import ipaddress
import logging
import re
import threading
import uuid
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Optional, Union

import devrisk.enrich as enrich
from devrisk.errors import (
    DataError,
    IdentificationFailed,
    NoAssessment,
    UnknownCategory,
    UnknownDevice,
    UnknownModel,
    UnknownTarget,
    ValidationError,
)
from devrisk.identify.pipeline import IdentifyConfig, identify_device
from devrisk.identify.skew import SkewProfile, load_trace
from devrisk.identify.webmatch import FingerprintSignature, load_corpus
from devrisk.model import DeviceCategory, DeviceRecord, RiskAssessment, risk_color
from devrisk.score import ScoringConfig, assemble_assessment
from devrisk.service.store import Store
from devrisk.service.views import GUIDED, RICH, build_guided, build_rich

logger = logging.getLogger(__name__)

HOSTNAME_RE = re.compile(
    r"^(?=.{1,253}$)[a-zA-Z0-9]([a-zA-Z0-9\-]{0,61}[a-zA-Z0-9])?"
    r"(\.[a-zA-Z0-9]([a-zA-Z0-9\-]{0,61}[a-zA-Z0-9])?)*$"
)

STATUS_OK = "ok"
STATUS_UNIDENTIFIED = "unidentified"


def _valid_address(address: str) -> bool:
    try:
        ipaddress.ip_address(address)
        return True
    except ValueError:
        return bool(HOSTNAME_RE.match(address))


class Engine:
    def __init__(
        self,
        store: Store,
        data_dir: Union[str, Path] = ".",
        scoring: ScoringConfig = ScoringConfig(),
        identify_config: IdentifyConfig = IdentifyConfig(),
    ):
        self.store = store
        self.data_dir = Path(data_dir)
        self.scoring = scoring
        self.identify_config = identify_config
        self._locks_guard = threading.Lock()
        self._device_locks: dict[str, threading.Lock] = {}
        self._cache_lock = threading.Lock()
        self._reference_cache: dict[str, object] = {}

    # -- reference data ----------------------------------------------------

    def _invalidate(self, key: str) -> None:
        with self._cache_lock:
            self._reference_cache.pop(key, None)

    def signatures(self) -> list[FingerprintSignature]:
        with self._cache_lock:
            if "signatures" not in self._reference_cache:
                raw = self.store.snapshot("signatures")
                self._reference_cache["signatures"] = [
                    FingerprintSignature.from_dict(d) for d in raw
                ]
            return self._reference_cache["signatures"]

    def profiles(self) -> list[SkewProfile]:
        with self._cache_lock:
            if "profiles" not in self._reference_cache:
                raw = self.store.snapshot("profiles")
                self._reference_cache["profiles"] = [SkewProfile.from_dict(d) for d in raw]
            return self._reference_cache["profiles"]

    def manifests(self) -> enrich.ManifestStore:
        with self._cache_lock:
            if "manifests" not in self._reference_cache:
                raw = self.store.snapshot("manifests")
                ms = enrich.ManifestStore()
                for item in raw.get("manifests", []):
                    ms.add(enrich.FirmwareManifest.from_dict(item))
                for a in raw.get("aliases", []):
                    ms.add_alias(
                        (a["from"]["vendor"], a["from"]["model"]),
                        (a["to"]["vendor"], a["to"]["model"]),
                    )
                self._reference_cache["manifests"] = ms
            return self._reference_cache["manifests"]

    def feed(self) -> list[enrich.VulnerabilityFeedEntry]:
        with self._cache_lock:
            if "feed" not in self._reference_cache:
                raw = self.store.snapshot("feed")
                self._reference_cache["feed"] = enrich.parse_feed_entries(raw)
            return self._reference_cache["feed"]

    def catalog(self) -> dict[str, list[tuple[str, str]]]:
        raw = self.store.snapshot("catalog")
        return {
            label: [(m["vendor"], m["model"]) for m in models]
            for label, models in raw.items()
        }

    def ingest(self, kind: str, payload) -> int:
        """Persist reference data. payload is a path (str) or parsed JSON."""
        if kind == "feed":
            if isinstance(payload, (str, Path)):
                entries = enrich.ingest_feed(self._resolve_path(payload))
            else:
                entries = enrich.parse_feed_entries(payload)
            self.store.set_reference("feed", [e.to_dict() for e in entries])
            self._invalidate("feed")
            return len(entries)
        if kind == "manifests":
            if isinstance(payload, (str, Path)):
                ms = enrich.ManifestStore.load(self._resolve_path(payload))
            else:
                ms = enrich.ManifestStore()
                items = payload["manifests"] if isinstance(payload, dict) else payload
                for item in items:
                    ms.add(enrich.FirmwareManifest.from_dict(item))
                if isinstance(payload, dict):
                    for a in payload.get("aliases", []):
                        ms.add_alias(
                            (a["from"]["vendor"], a["from"]["model"]),
                            (a["to"]["vendor"], a["to"]["model"]),
                        )
            self.store.set_reference(
                "manifests",
                {
                    "manifests": [m.to_dict() for m in ms.all_manifests()],
                    "aliases": [
                        {"from": {"vendor": f[0], "model": f[1]},
                         "to": {"vendor": t[0], "model": t[1]}}
                        for f, t in ms._aliases.items()
                    ],
                },
            )
            self._invalidate("manifests")
            return len(ms.all_manifests())
        if kind == "signatures":
            if isinstance(payload, (str, Path)):
                import json as _json

                payload = _json.loads(self._resolve_path(payload).read_text("utf-8"))
            sigs = [FingerprintSignature.from_dict(d) for d in payload]
            self.store.set_reference("signatures", [s.to_dict() for s in sigs])
            self._invalidate("signatures")
            return len(sigs)
        if kind == "profiles":
            if isinstance(payload, (str, Path)):
                import json as _json

                payload = _json.loads(self._resolve_path(payload).read_text("utf-8"))
            profs = [SkewProfile.from_dict(d) for d in payload]
            self.store.set_reference("profiles", [p.to_dict() for p in profs])
            self._invalidate("profiles")
            return len(profs)
        if kind == "catalog":
            if isinstance(payload, (str, Path)):
                import json as _json

                payload = _json.loads(self._resolve_path(payload).read_text("utf-8"))
            if not isinstance(payload, dict):
                raise ValidationError("catalog must map category labels to model lists")
            self.store.set_reference("catalog", payload)
            return sum(len(v) for v in payload.values())
        raise ValidationError(f"unknown ingest kind {kind!r}")

    def _resolve_path(self, p: Union[str, Path]) -> Path:
        p = Path(p)
        return p if p.is_absolute() else self.data_dir / p

    # -- registry ----------------------------------------------------------

    def register_device(
        self,
        network_address: str,
        category: str,
        device_type: str,
        owner: str,
        corpus_path: Optional[str] = None,
        trace_path: Optional[str] = None,
    ) -> tuple[DeviceRecord, bool]:
        """Returns (record, created). Registration is idempotent on the
        (network_address, owner) pair."""
        if not owner or not owner.strip():
            raise ValidationError("owner must be non-empty")
        if not device_type or not device_type.strip():
            raise ValidationError("device_type must be non-empty")
        if not network_address or not _valid_address(network_address):
            raise ValidationError(f"malformed network address {network_address!r}")
        try:
            cat = DeviceCategory(category)
        except ValueError:
            raise ValidationError(
                f"category must be one of {[c.value for c in DeviceCategory]}, got {category!r}"
            ) from None

        existing = self.store.find_device_id(network_address, owner)
        if existing is not None:
            return DeviceRecord.from_dict(self.store.get_device(existing)), False

        record = DeviceRecord(
            device_id=self.store.new_device_id(),
            network_address=network_address,
            category=cat,
            device_type=device_type,
            owner=owner,
            registered_at=datetime.now(timezone.utc),
        )
        evidence = {}
        if corpus_path:
            evidence["corpus"] = corpus_path
        if trace_path:
            evidence["trace"] = trace_path
        self.store.put_device(record.to_dict(), evidence=evidence)
        return record, True

    def get_device(self, device_id: str) -> DeviceRecord:
        raw = self.store.get_device(device_id)
        if raw is None:
            raise UnknownDevice(f"unknown device {device_id!r}")
        return DeviceRecord.from_dict(raw)

    def list_devices(
        self, owner: Optional[str] = None, category: Optional[str] = None
    ) -> list[dict]:
        """Concise per-device summaries, highest risk first, then name."""
        rows = []
        for raw in self.store.devices_in_order():
            rec = DeviceRecord.from_dict(raw)
            if owner is not None and rec.owner != owner:
                continue
            if category is not None and rec.category.value.lower() != category.lower():
                continue
            current = future = color = None
            arec = self.store.get_assessment_record(rec.device_id)
            if arec and arec.get("status") == STATUS_OK:
                assessment = RiskAssessment.from_dict(arec["assessment"])
                current = assessment.current_risk
                future = assessment.future_risk.value
                color = risk_color(assessment.current_risk).value
            rows.append(
                {
                    "device_id": rec.device_id,
                    "device_type": rec.device_type,
                    "network_address": rec.network_address,
                    "category": rec.category.value,
                    "owner": rec.owner,
                    "current_risk": current.value if current else None,
                    "color": color,
                    "future_risk": future,
                    "_sort_rank": current.rank if current else -1,
                }
            )
        rows.sort(key=lambda r: (-r["_sort_rank"], r["device_type"], r["device_id"]))
        for r in rows:
            r.pop("_sort_rank")
        return rows

    # -- assessment pipeline -------------------------------------------------

    def _device_lock(self, device_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._device_locks.setdefault(device_id, threading.Lock())

    def run_assessment(self, device_id: str, as_of: date) -> dict:
        """identify -> enrich -> score, persisted as the device's latest
        assessment record.

        Re-running with the same as_of returns the persisted record
        unchanged, and an in-flight run for the same device is joined
        rather than duplicated (second caller blocks, then reads).
        """
        device = self.get_device(device_id)
        cached = self._fresh_record(device_id, as_of)
        if cached is not None:
            return cached
        with self._device_lock(device_id):
            cached = self._fresh_record(device_id, as_of)
            if cached is not None:
                return cached
            record = self._compute_assessment(device, as_of)
            previous = self.store.get_assessment_record(device_id)
            self.store.put_assessment_record(device_id, record)
            if record.get("status") == STATUS_OK:
                self._notify_if_changed(device, previous, record)
            return record

    def _fresh_record(self, device_id: str, as_of: date) -> Optional[dict]:
        rec = self.store.get_assessment_record(device_id)
        if rec is not None and rec.get("as_of") == as_of.isoformat():
            return rec
        return None

    def _compute_assessment(self, device: DeviceRecord, as_of: date) -> dict:
        generated_at = datetime.now(timezone.utc)
        base = {"as_of": as_of.isoformat(), "generated_at": generated_at.isoformat()}
        try:
            result = self._identify(device)
        except (DataError, IdentificationFailed) as exc:
            logger.warning("identification failed for %s: %s", device.device_id, exc)
            return {
                **base,
                "status": STATUS_UNIDENTIFIED,
                "reason": str(exc),
                "assessment": None,
            }
        if not result.decision.identified:
            return {
                **base,
                "status": STATUS_UNIDENTIFIED,
                "reason": "no hypothesis reached the decision threshold",
                "assessment": None,
            }

        identity = result.decision.identity
        updated = DeviceRecord(
            device_id=device.device_id,
            network_address=device.network_address,
            category=device.category,
            device_type=device.device_type,
            owner=device.owner,
            registered_at=device.registered_at,
            identity=identity,
            confidence=min(1.0, result.decision.confidence),
            version_assumed=result.version_assumed,
        )
        self.store.put_device(updated.to_dict())

        manifests = self.manifests()
        feed = self.feed()
        identified_manifest = manifests.get(identity)
        history = manifests.history(identity.vendor, identity.model)
        events = enrich.compute_patch_events(history, feed)
        cve_table = enrich.device_cve_table(
            identified_manifest, events, feed, self.scoring, as_of=as_of
        )
        exceptional = enrich.detect_exceptional_risks(identified_manifest)
        assessment = assemble_assessment(
            device_id=device.device_id,
            identity=identity,
            cve_table=cve_table,
            exceptional_risks=exceptional,
            events=events,
            history=history,
            config=self.scoring,
            as_of=as_of,
            generated_at=generated_at,
        )
        return {**base, "status": STATUS_OK, "assessment": assessment.to_dict()}

    def _identify(self, device: DeviceRecord):
        evidence = self.store.evidence_for(device.device_id)
        corpus = trace = None
        if evidence.get("corpus"):
            corpus = load_corpus(self._resolve_path(evidence["corpus"]))
        if evidence.get("trace"):
            trace = load_trace(self._resolve_path(evidence["trace"]))
        if corpus is None and trace is None:
            raise IdentificationFailed(
                f"no fixture corpus or trace registered for {device.device_id}"
            )
        manifests = self.manifests()

        def latest_version(vendor: str, model: str) -> Optional[str]:
            try:
                return manifests.latest(vendor, model).identity.firmware_version
            except UnknownModel:
                return None

        return identify_device(
            corpus,
            trace,
            self.signatures(),
            self.profiles(),
            config=self.identify_config,
            resolve_latest_version=latest_version,
        )

    def latest_assessment(self, device_id: str) -> RiskAssessment:
        self.get_device(device_id)
        rec = self.store.get_assessment_record(device_id)
        if rec is None or rec.get("status") != STATUS_OK:
            raise NoAssessment(f"no assessment available for {device_id}")
        return RiskAssessment.from_dict(rec["assessment"])

    # -- views ---------------------------------------------------------------

    def get_view(self, device_id: str, version: str) -> dict:
        device = self.get_device(device_id)
        assessment = self.latest_assessment(device_id)
        if version == GUIDED:
            return build_guided(device, assessment)
        if version == RICH:
            return build_rich(device, assessment)
        raise ValidationError(f"view version must be guided or rich, got {version!r}")

    # -- category comparison ---------------------------------------------------

    def model_assessment(
        self, vendor: str, model: str, as_of: date
    ) -> RiskAssessment:
        """Assessment of a catalog model's newest firmware, independent of
        any registered device."""
        manifests = self.manifests()
        feed = self.feed()
        history = manifests.history(vendor, model)
        if not history:
            raise UnknownModel(f"no manifests for {vendor} {model}")
        latest = history[-1]
        events = enrich.compute_patch_events(history, feed)
        cve_table = enrich.device_cve_table(latest, events, feed, self.scoring, as_of=as_of)
        exceptional = enrich.detect_exceptional_risks(latest)
        return assemble_assessment(
            device_id=f"model:{vendor}/{model}",
            identity=latest.identity,
            cve_table=cve_table,
            exceptional_risks=exceptional,
            events=events,
            history=history,
            config=self.scoring,
            as_of=as_of,
        )

    def compare_category(self, label: str, as_of: date) -> list[dict]:
        """One card per catalog model in the category, best first."""
        catalog = self.catalog()
        models = catalog.get(label.lower())
        if not models:
            raise UnknownCategory(f"unknown category {label!r}")
        cards = []
        for vendor, model in models:
            assessment = self.model_assessment(vendor, model, as_of)
            cards.append(
                {
                    "vendor": vendor,
                    "model": model,
                    "firmware_version": assessment.identity.firmware_version,
                    "current_risk": assessment.current_risk.value,
                    "color": risk_color(assessment.current_risk).value,
                    "future_risk": assessment.future_risk.value,
                    "unpatched_cve_count": len(assessment.cve_table),
                    "exceptional_risk_count": len(assessment.exceptional_risks),
                    "link": f"/categories/{label.lower()}/models/{vendor}/{model}",
                    "_rank": assessment.current_risk.rank,
                }
            )
        cards.sort(key=lambda c: (c["_rank"], c["vendor"], c["model"]))
        for c in cards:
            c.pop("_rank")
        return cards

    # -- subscriptions -----------------------------------------------------------

    def subscribe(
        self,
        sink: str,
        device_id: Optional[str] = None,
        model: Optional[tuple[str, str]] = None,
    ) -> dict:
        if not sink:
            raise ValidationError("sink must be non-empty")
        if (device_id is None) == (model is None):
            raise ValidationError("subscribe to exactly one of device_id or model")
        if device_id is not None and self.store.get_device(device_id) is None:
            raise UnknownTarget(f"unknown device {device_id!r}")
        if model is not None:
            vendor, name = model
            if not self.manifests().history(vendor, name):
                raise UnknownTarget(f"unknown model {vendor} {name}")
        sub = {
            "subscription_id": f"sub-{uuid.uuid4().hex[:12]}",
            "device_id": device_id,
            "model": {"vendor": model[0], "model": model[1]} if model else None,
            "sink": sink,
            "created_at": datetime.now(timezone.utc).isoformat(),
        }
        self.store.put_subscription(sub)
        return sub

    def unsubscribe(self, subscription_id: str) -> None:
        if not self.store.delete_subscription(subscription_id):
            raise UnknownTarget(f"unknown subscription {subscription_id!r}")

    def notify_on_change(
        self, device: DeviceRecord, old: RiskAssessment, new: RiskAssessment
    ) -> list[dict]:
        """Build change notifications; one per matching subscription iff
        the risk levels or the CVE-table membership moved."""
        old_ids = {v.cve_id for v in old.cve_table}
        new_ids = {v.cve_id for v in new.cve_table}
        changed = (
            old.current_risk != new.current_risk
            or old.future_risk != new.future_risk
            or old_ids != new_ids
        )
        if not changed:
            return []
        payload = {
            "device_id": device.device_id,
            "device_type": device.device_type,
            "model": {
                "vendor": new.identity.vendor,
                "model": new.identity.model,
            },
            "old_current_risk": old.current_risk.value,
            "new_current_risk": new.current_risk.value,
            "old_future_risk": old.future_risk.value,
            "new_future_risk": new.future_risk.value,
            "cves_added": sorted(new_ids - old_ids),
            "cves_removed": sorted(old_ids - new_ids),
            "generated_at": new.generated_at.isoformat(),
        }
        emitted = []
        for sub in self.store.subscriptions():
            if sub.get("device_id") and sub["device_id"] != device.device_id:
                continue
            if sub.get("model") and (
                sub["model"]["vendor"] != new.identity.vendor
                or sub["model"]["model"] != new.identity.model
            ):
                continue
            note = {"subscription_id": sub["subscription_id"], **payload}
            self._deliver(sub["sink"], note)
            emitted.append(note)
        return emitted

    def _notify_if_changed(
        self, device: DeviceRecord, previous: Optional[dict], new_record: dict
    ) -> None:
        if not previous or previous.get("status") != STATUS_OK:
            return
        old = RiskAssessment.from_dict(previous["assessment"])
        new = RiskAssessment.from_dict(new_record["assessment"])
        # refresh the device record; identity may have been set this run
        device = self.get_device(device.device_id)
        self.notify_on_change(device, old, new)

    def _deliver(self, sink: str, note: dict) -> None:
        import json as _json

        if sink.startswith("log:"):
            path = self._resolve_path(sink[len("log:"):])
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("a", encoding="utf-8") as fh:
                fh.write(_json.dumps(note) + "\n")
        elif sink.startswith(("http://", "https://")):
            import httpx

            try:
                httpx.post(sink, json=note, timeout=5.0)
            except httpx.HTTPError as exc:
                logger.warning("webhook delivery to %s failed: %s", sink, exc)
        else:
            logger.info("notification (%s): %s", sink, note)
