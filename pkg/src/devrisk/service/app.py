"""HTTP/JSON API over the engine.

All bodies use the canonical serialization so that, for the same store
state, the CLI and the service emit byte-identical JSON.
"""

from __future__ import annotations

from datetime import date
from typing import Optional

from fastapi import FastAPI, Request, Response

from devrisk.errors import (
    DataError,
    MalformedFeed,
    MalformedManifest,
    NoAssessment,
    UnknownCategory,
    UnknownDevice,
    UnknownModel,
    UnknownTarget,
    ValidationError,
)
from devrisk.model import canonical_json
from devrisk.service.engine import Engine

_NOT_FOUND = (UnknownDevice, UnknownCategory, UnknownTarget, UnknownModel, NoAssessment)


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _parse_as_of(value: Optional[str]) -> date:
    if value is None:
        return date.today()
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise ValidationError(f"as_of must be an ISO date (YYYY-MM-DD), got {value!r}")


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="devrisk", docs_url=None, redoc_url=None)
    app.state.engine = engine

    # the web client is served statically and calls across origins;
    # single-tenant desk deployment, no credentials involved
    from fastapi.middleware.cors import CORSMiddleware

    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(DataError)
    async def data_error_handler(request: Request, exc: DataError) -> Response:
        status = 404 if isinstance(exc, _NOT_FOUND) else 422
        return _json_response(
            {"error": type(exc).__name__, "detail": str(exc)}, status_code=status
        )

    @app.get("/healthz")
    def healthz() -> Response:
        return _json_response({"status": "ok"})

    @app.post("/devices")
    async def register_device(request: Request) -> Response:
        body = await request.json()
        record, created = engine.register_device(
            network_address=body.get("network_address", ""),
            category=body.get("category", ""),
            device_type=body.get("device_type", ""),
            owner=body.get("owner", ""),
            corpus_path=body.get("corpus"),
            trace_path=body.get("trace"),
        )
        return _json_response(
            {"device": record.to_dict(), "created": created},
            status_code=201 if created else 200,
        )

    @app.get("/devices")
    def list_devices(owner: Optional[str] = None, category: Optional[str] = None) -> Response:
        return _json_response({"devices": engine.list_devices(owner, category)})

    @app.get("/devices/{device_id}")
    def get_device(device_id: str) -> Response:
        record = engine.get_device(device_id)
        arec = engine.store.get_assessment_record(device_id)
        return _json_response(
            {
                "device": record.to_dict(),
                "assessment_status": arec.get("status") if arec else None,
                "as_of": arec.get("as_of") if arec else None,
                "assessment": arec.get("assessment") if arec else None,
            }
        )

    @app.post("/devices/{device_id}/assess")
    def assess(device_id: str, as_of: Optional[str] = None) -> Response:
        record = engine.run_assessment(device_id, _parse_as_of(as_of))
        if record.get("status") == "ok":
            # bare assessment body; byte-identical to `assess --format json`
            return _json_response(record["assessment"])
        return _json_response(record)

    @app.get("/devices/{device_id}/view")
    def view(device_id: str, version: str = "guided") -> Response:
        return _json_response(engine.get_view(device_id, version))

    @app.get("/categories/{label}/compare")
    def compare(label: str, as_of: Optional[str] = None) -> Response:
        cards = engine.compare_category(label, _parse_as_of(as_of))
        return _json_response({"category": label.lower(), "cards": cards})

    @app.post("/subscriptions")
    async def subscribe(request: Request) -> Response:
        body = await request.json()
        model = body.get("model")
        sub = engine.subscribe(
            sink=body.get("sink", ""),
            device_id=body.get("device_id"),
            model=(model["vendor"], model["model"]) if model else None,
        )
        return _json_response({"subscription": sub}, status_code=201)

    @app.delete("/subscriptions/{subscription_id}")
    def unsubscribe(subscription_id: str) -> Response:
        engine.unsubscribe(subscription_id)
        return Response(status_code=204)

    @app.post("/admin/ingest/{kind}")
    async def ingest(kind: str, request: Request) -> Response:
        if kind not in ("feed", "manifests", "signatures", "profiles", "catalog"):
            raise ValidationError(f"unknown ingest kind {kind!r}")
        body = await request.json()
        payload = body["path"] if isinstance(body, dict) and "path" in body else body
        try:
            count = engine.ingest(kind, payload)
        except (KeyError, TypeError) as exc:
            raise MalformedFeed(str(exc)) if kind == "feed" else MalformedManifest(str(exc))
        return _json_response({"ingested": count, "kind": kind})

    return app


def build_default_app(config_path: Optional[str] = None) -> FastAPI:
    """Entry point for `uvicorn devrisk.service.app:build_default_app`."""
    from devrisk.service.config import ServiceConfig
    from devrisk.service.store import Store

    config = ServiceConfig.load(config_path)
    store = Store(config.resolved_store_path())
    engine = Engine(
        store,
        data_dir=config.data_dir,
        scoring=config.scoring,
        identify_config=config.identify,
    )
    return create_app(engine)
