"""HTTP service: registry, assessment orchestration, persistence, views."""

from devrisk.service.app import create_app
from devrisk.service.config import ServiceConfig
from devrisk.service.engine import Engine
from devrisk.service.store import Store

__all__ = ["create_app", "ServiceConfig", "Engine", "Store"]
