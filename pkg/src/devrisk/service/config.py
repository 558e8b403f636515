"""Service configuration: file-based with environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from devrisk.errors import ValidationError
from devrisk.identify.pipeline import IdentifyConfig
from devrisk.score import ScoringConfig

ENV_PREFIX = "DEVRISK_"


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8787
    data_dir: Path = Path("./data")
    store_path: Optional[Path] = None  # default: <data_dir>/store.json
    scoring: ScoringConfig = field(default_factory=ScoringConfig)
    identify: IdentifyConfig = field(default_factory=IdentifyConfig)

    def resolved_store_path(self) -> Path:
        return self.store_path or (Path(self.data_dir) / "store.json")

    @classmethod
    def load(cls, path: Optional[Union[str, Path]] = None) -> "ServiceConfig":
        """Read JSON or TOML config, then apply DEVRISK_* env overrides."""
        raw: dict = {}
        if path is not None:
            p = Path(path)
            text = p.read_text(encoding="utf-8")
            if p.suffix == ".toml":
                try:
                    import tomllib  # Python 3.11+
                except ImportError as exc:
                    raise ValidationError(
                        "TOML config needs Python 3.11+; use JSON instead"
                    ) from exc
                raw = tomllib.loads(text)
            else:
                raw = json.loads(text)
        return cls.from_dict(raw).with_env_overrides()

    @classmethod
    def from_dict(cls, raw: dict) -> "ServiceConfig":
        try:
            return cls(
                host=raw.get("host", cls.host),
                port=int(raw.get("port", cls.port)),
                data_dir=Path(raw.get("data_dir", "./data")),
                store_path=Path(raw["store_path"]) if raw.get("store_path") else None,
                scoring=ScoringConfig.from_dict(raw.get("scoring", {})),
                identify=IdentifyConfig(**raw.get("identify", {})),
            )
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad service config: {exc}") from exc

    def with_env_overrides(self) -> "ServiceConfig":
        host = os.environ.get(ENV_PREFIX + "HOST", self.host)
        port = int(os.environ.get(ENV_PREFIX + "PORT", self.port))
        data_dir = Path(os.environ.get(ENV_PREFIX + "DATA_DIR", self.data_dir))
        store = os.environ.get(ENV_PREFIX + "STORE_PATH")
        store_path = Path(store) if store else self.store_path
        return ServiceConfig(
            host=host,
            port=port,
            data_dir=data_dir,
            store_path=store_path,
            scoring=self.scoring,
            identify=self.identify,
        )
