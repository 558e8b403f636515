"""Shared domain types: risk levels, identities, device records, assessments.

Everything here is an immutable value with a canonical JSON form
(snake_case keys, ISO-8601 dates, RFC 3339 timestamps). No I/O.
"""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass
from datetime import date, datetime
from typing import Any, Optional

from devrisk.errors import ValidationError

WILDCARD_VERSION = "*"


@functools.total_ordering
class _OrderedLevel(enum.Enum):
    """Enum base with ordering taken from member declaration order."""

    @property
    def rank(self) -> int:
        return list(type(self)).index(self)

    def __lt__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.rank < other.rank


class RiskLevel(_OrderedLevel):
    LOW = "Low"
    MEDIUM = "Medium"
    HIGH = "High"


class FutureRiskLevel(_OrderedLevel):
    LOW = "Low"
    MEDIUM = "Medium"
    HIGH = "High"
    CRITICAL = "Critical"


class VulnTrendLevel(_OrderedLevel):
    LOW = "Low"
    MEDIUM = "Medium"
    HIGH = "High"


class PatchTrendLevel(_OrderedLevel):
    """Vendor patching speed; FAST is best, so rank orders by badness."""

    FAST = "Fast"
    MEDIUM = "Medium"
    SLOW = "Slow"


class Color(_OrderedLevel):
    GREEN = "Green"
    YELLOW = "Yellow"
    RED = "Red"


class DeviceCategory(enum.Enum):
    BUSINESS = "Business"
    PRIVATE = "Private"


class ExceptionalRiskKind(enum.Enum):
    PRIVATE_KEY_MATERIAL = "PrivateKeyMaterial"
    OTHER = "Other"


def risk_color(level: RiskLevel) -> Color:
    """Display color for a risk level. Never stored, always derived."""
    return {
        RiskLevel.LOW: Color.GREEN,
        RiskLevel.MEDIUM: Color.YELLOW,
        RiskLevel.HIGH: Color.RED,
    }[level]


@dataclass(frozen=True, order=True)
class ModelIdentity:
    """(vendor, model, firmware_version) key joining fingerprints, manifests
    and vulnerabilities. firmware_version may be "*" while unresolved."""

    vendor: str
    model: str
    firmware_version: str

    def __post_init__(self) -> None:
        if not self.vendor or not self.model:
            raise ValidationError("vendor and model must be non-empty")
        if not self.firmware_version:
            raise ValidationError("firmware_version must be non-empty (use '*' as wildcard)")

    @property
    def is_wildcard(self) -> bool:
        return self.firmware_version == WILDCARD_VERSION

    def model_key(self) -> tuple[str, str]:
        return (self.vendor, self.model)

    def with_version(self, version: str) -> "ModelIdentity":
        return ModelIdentity(self.vendor, self.model, version)

    def to_dict(self) -> dict:
        return {
            "vendor": self.vendor,
            "model": self.model,
            "firmware_version": self.firmware_version,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelIdentity":
        return cls(d["vendor"], d["model"], d.get("firmware_version", WILDCARD_VERSION))


@dataclass(frozen=True)
class ExceptionalRisk:
    """A firmware finding outside CVE data, e.g. embedded private keys."""

    kind: ExceptionalRiskKind
    description: str
    evidence: str
    label: Optional[str] = None  # only for kind OTHER

    def __post_init__(self) -> None:
        if self.kind is ExceptionalRiskKind.PRIVATE_KEY_MATERIAL and not self.evidence:
            raise ValidationError("PrivateKeyMaterial risk requires non-empty evidence")

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind.value,
            "description": self.description,
            "evidence": self.evidence,
        }
        if self.label is not None:
            d["label"] = self.label
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExceptionalRisk":
        return cls(
            kind=ExceptionalRiskKind(d["kind"]),
            description=d["description"],
            evidence=d["evidence"],
            label=d.get("label"),
        )


@dataclass(frozen=True)
class AssessedVulnerability:
    """One CVE as it applies to an identified firmware image."""

    cve_id: str
    cvss_score: float
    severity: RiskLevel
    published: date
    patched_in: Optional[str] = None
    patch_latency_days: Optional[int] = None
    exploitation_probability: Optional[float] = None

    def __post_init__(self) -> None:
        if (self.patched_in is None) != (self.patch_latency_days is None):
            raise ValidationError(
                f"{self.cve_id}: patch_latency_days present iff patched_in present"
            )
        if self.patch_latency_days is not None and self.patch_latency_days < 0:
            raise ValidationError(f"{self.cve_id}: negative patch latency")

    def to_dict(self) -> dict:
        return {
            "cve_id": self.cve_id,
            "cvss_score": self.cvss_score,
            "severity": self.severity.value,
            "published": self.published.isoformat(),
            "patched_in": self.patched_in,
            "patch_latency_days": self.patch_latency_days,
            "exploitation_probability": self.exploitation_probability,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AssessedVulnerability":
        return cls(
            cve_id=d["cve_id"],
            cvss_score=d["cvss_score"],
            severity=RiskLevel(d["severity"]),
            published=date.fromisoformat(d["published"]),
            patched_in=d.get("patched_in"),
            patch_latency_days=d.get("patch_latency_days"),
            exploitation_probability=d.get("exploitation_probability"),
        )


@dataclass(frozen=True)
class DeviceRecord:
    """A registered device. identity/confidence are set once identification
    succeeds; version_assumed marks a firmware version inferred from the
    newest known release rather than observed directly."""

    device_id: str
    network_address: str
    category: DeviceCategory
    device_type: str
    owner: str
    registered_at: datetime
    identity: Optional[ModelIdentity] = None
    confidence: Optional[float] = None
    version_assumed: bool = False

    def __post_init__(self) -> None:
        if (self.identity is None) != (self.confidence is None):
            raise ValidationError("confidence present iff identity present")
        if self.confidence is not None and not 0.0 <= self.confidence <= 1.0:
            raise ValidationError("confidence must be in [0, 1]")

    def to_dict(self) -> dict:
        return {
            "device_id": self.device_id,
            "network_address": self.network_address,
            "category": self.category.value,
            "device_type": self.device_type,
            "owner": self.owner,
            "registered_at": self.registered_at.isoformat(),
            "identity": self.identity.to_dict() if self.identity else None,
            "confidence": self.confidence,
            "version_assumed": self.version_assumed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DeviceRecord":
        ident = d.get("identity")
        return cls(
            device_id=d["device_id"],
            network_address=d["network_address"],
            category=DeviceCategory(d["category"]),
            device_type=d["device_type"],
            owner=d["owner"],
            registered_at=datetime.fromisoformat(d["registered_at"]),
            identity=ModelIdentity.from_dict(ident) if ident else None,
            confidence=d.get("confidence"),
            version_assumed=d.get("version_assumed", False),
        )


@dataclass(frozen=True)
class RiskAssessment:
    """Full scored output for one device at one point in time."""

    device_id: str
    identity: ModelIdentity
    current_risk: RiskLevel
    current_risk_basis: Optional[float]  # highest CVSS among unpatched CVEs
    cve_table: tuple[AssessedVulnerability, ...]
    exceptional_risks: tuple[ExceptionalRisk, ...]
    vuln_trend: VulnTrendLevel
    patch_trend: PatchTrendLevel
    patch_trend_mean_days: Optional[float]
    future_risk: FutureRiskLevel
    patches_per_year: dict[int, int]
    vulns_per_year: dict[int, int]
    generated_at: datetime

    def to_dict(self) -> dict:
        return {
            "device_id": self.device_id,
            "identity": self.identity.to_dict(),
            "current_risk": self.current_risk.value,
            "current_risk_basis": self.current_risk_basis,
            "cve_table": [v.to_dict() for v in self.cve_table],
            "exceptional_risks": [r.to_dict() for r in self.exceptional_risks],
            "vuln_trend": self.vuln_trend.value,
            "patch_trend": self.patch_trend.value,
            "patch_trend_mean_days": self.patch_trend_mean_days,
            "future_risk": self.future_risk.value,
            "patches_per_year": {str(y): n for y, n in sorted(self.patches_per_year.items())},
            "vulns_per_year": {str(y): n for y, n in sorted(self.vulns_per_year.items())},
            "generated_at": self.generated_at.isoformat(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RiskAssessment":
        return cls(
            device_id=d["device_id"],
            identity=ModelIdentity.from_dict(d["identity"]),
            current_risk=RiskLevel(d["current_risk"]),
            current_risk_basis=d.get("current_risk_basis"),
            cve_table=tuple(AssessedVulnerability.from_dict(v) for v in d["cve_table"]),
            exceptional_risks=tuple(ExceptionalRisk.from_dict(r) for r in d["exceptional_risks"]),
            vuln_trend=VulnTrendLevel(d["vuln_trend"]),
            patch_trend=PatchTrendLevel(d["patch_trend"]),
            patch_trend_mean_days=d.get("patch_trend_mean_days"),
            future_risk=FutureRiskLevel(d["future_risk"]),
            patches_per_year={int(y): n for y, n in d["patches_per_year"].items()},
            vulns_per_year={int(y): n for y, n in d["vulns_per_year"].items()},
            generated_at=datetime.fromisoformat(d["generated_at"]),
        )


def canonical_json(payload: Any) -> str:
    """The one JSON serialization used for API bodies and CLI output.

    Byte-stable for a given payload: 2-space indent, no ASCII escaping,
    insertion-ordered keys, trailing newline.
    """
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

