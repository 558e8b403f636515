"""Identify devices from characteristic patterns of their web pages:
vendor and model strings, copyright lines, API paths, firmware banners.

Matching is fixture-driven; a minimal live fetcher exists for demos only.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from devrisk.errors import EmptyCorpus, ValidationError
from devrisk.identify.opinion import Opinion
from devrisk.model import ModelIdentity

DEFAULT_BELIEF_CAP = 0.95


class PatternLocation(enum.Enum):
    BODY = "body"
    HEADER = "header"
    URL = "url"


@dataclass(frozen=True)
class Pattern:
    location: PatternLocation
    match: str
    kind: str = "literal"  # literal | regex
    header_name: Optional[str] = None
    weight: float = 1.0

    def __post_init__(self) -> None:
        if self.weight <= 0:
            raise ValidationError("pattern weight must be positive")
        if self.kind not in ("literal", "regex"):
            raise ValidationError(f"unknown pattern kind {self.kind!r}")
        if self.location is PatternLocation.HEADER and not self.header_name:
            raise ValidationError("header patterns need header_name")

    def _hit(self, text: str) -> bool:
        if self.kind == "regex":
            return re.search(self.match, text) is not None
        return self.match in text

    def matches_page(self, page: "Page") -> bool:
        if self.location is PatternLocation.BODY:
            return self._hit(page.body)
        if self.location is PatternLocation.URL:
            return self._hit(page.url)
        value = page.header(self.header_name)
        return value is not None and self._hit(value)

    def to_dict(self) -> dict:
        d = {
            "location": self.location.value,
            "kind": self.kind,
            "match": self.match,
            "weight": self.weight,
        }
        if self.header_name is not None:
            d["header_name"] = self.header_name
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Pattern":
        return cls(
            location=PatternLocation(d["location"]),
            match=d["match"],
            kind=d.get("kind", "literal"),
            header_name=d.get("header_name"),
            weight=d.get("weight", 1.0),
        )


@dataclass(frozen=True)
class FingerprintSignature:
    signature_id: str
    identity: ModelIdentity
    patterns: tuple[Pattern, ...]

    def __post_init__(self) -> None:
        if not self.patterns:
            raise ValidationError(f"{self.signature_id}: signature needs patterns")
        if sum(p.weight for p in self.patterns) <= 0:
            raise ValidationError(f"{self.signature_id}: weights must sum > 0")

    def matched_fraction(self, corpus: "WebCorpus") -> float:
        total = sum(p.weight for p in self.patterns)
        hit = sum(
            p.weight for p in self.patterns
            if any(p.matches_page(page) for page in corpus.pages)
        )
        return hit / total

    def to_dict(self) -> dict:
        return {
            "signature_id": self.signature_id,
            "identity": self.identity.to_dict(),
            "patterns": [p.to_dict() for p in self.patterns],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FingerprintSignature":
        return cls(
            signature_id=d["signature_id"],
            identity=ModelIdentity.from_dict(d["identity"]),
            patterns=tuple(Pattern.from_dict(p) for p in d["patterns"]),
        )


@dataclass(frozen=True)
class Page:
    url: str
    status: int
    headers: tuple[tuple[str, str], ...]
    body: str

    def header(self, name: str) -> Optional[str]:
        wanted = name.lower()
        for k, v in self.headers:
            if k.lower() == wanted:
                return v
        return None

    def to_dict(self) -> dict:
        return {
            "url": self.url,
            "status": self.status,
            "headers": {k: v for k, v in self.headers},
            "body": self.body,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Page":
        return cls(
            url=d["url"],
            status=d.get("status", 200),
            headers=tuple(d.get("headers", {}).items()),
            body=d.get("body", ""),
        )


@dataclass(frozen=True)
class WebCorpus:
    device_id: str
    pages: tuple[Page, ...]

    def to_dict(self) -> dict:
        return {"device_id": self.device_id, "pages": [p.to_dict() for p in self.pages]}

    @classmethod
    def from_dict(cls, d: dict) -> "WebCorpus":
        return cls(
            device_id=d.get("device_id", ""),
            pages=tuple(Page.from_dict(p) for p in d.get("pages", [])),
        )


def match_web_patterns(
    corpus: WebCorpus,
    signatures: Sequence[FingerprintSignature],
    belief_cap: float = DEFAULT_BELIEF_CAP,
) -> Opinion:
    """Score every signature against the corpus and emit an opinion.

    Per signature, f = matched weight / total weight. Identities with
    f > 0 become hypotheses (strongest f wins when several signatures
    share an identity); belief masses are proportional to f and scaled so
    their sum equals max(f), capped below 1 so a single source is never
    dogmatic. The rest is uncertainty. No match at all is the vacuous
    opinion, not an error.
    """
    if not corpus.pages:
        raise EmptyCorpus(f"corpus for {corpus.device_id or '<unknown>'} has no pages")
    if not signatures:
        raise ValidationError("signature list is empty")

    fractions: dict[ModelIdentity, float] = {}
    for sig in signatures:
        f = sig.matched_fraction(corpus)
        if f > 0:
            fractions[sig.identity] = max(f, fractions.get(sig.identity, 0.0))
    if not fractions:
        return Opinion.vacuous()

    total_f = sum(fractions.values())
    total_belief = min(max(fractions.values()), belief_cap)
    masses = {x: total_belief * f / total_f for x, f in fractions.items()}
    return Opinion.from_masses(masses, uncertainty=1.0 - sum(masses.values()))


def load_signatures(path: Union[str, Path]) -> list[FingerprintSignature]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return [FingerprintSignature.from_dict(d) for d in raw]


def load_corpus(path: Union[str, Path]) -> WebCorpus:
    return WebCorpus.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


# paths probed by the demo-only live fetcher
LIVE_PROBE_PATHS = ("/", "/index.html", "/status", "/api/status", "/about")


def fetch_live_corpus(host: str, timeout: float = 3.0) -> WebCorpus:
    """HTTP GET a handful of common device paths. Demo convenience only;
    tests and the service pipeline run from fixture corpora."""
    import httpx

    pages = []
    for p in LIVE_PROBE_PATHS:
        url = f"http://{host}{p}"
        try:
            resp = httpx.get(url, timeout=timeout, follow_redirects=True)
        except httpx.HTTPError:
            continue
        pages.append(
            Page(
                url=url,
                status=resp.status_code,
                headers=tuple(resp.headers.items()),
                body=resp.text,
            )
        )
    if not pages:
        raise EmptyCorpus(f"no page fetched from {host}")
    return WebCorpus(device_id=host, pages=tuple(pages))
