"""Risk scoring: severity buckets, trends, and the future-risk matrix.

All operations are pure functions over matched vulnerabilities and patch
events. `as_of` is an explicit parameter wherever history matters, so the
same inputs always score the same way.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from datetime import date, datetime, timezone
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from devrisk.errors import OutOfRange, ValidationError

if TYPE_CHECKING:  # avoids a runtime import cycle with devrisk.enrich
    from devrisk.enrich import FirmwareManifest, PatchEvent
from devrisk.model import (
    AssessedVulnerability,
    ExceptionalRisk,
    FutureRiskLevel,
    ModelIdentity,
    PatchTrendLevel,
    RiskAssessment,
    RiskLevel,
    VulnTrendLevel,
)


@dataclass(frozen=True)
class ScoringConfig:
    """Thresholds for severity buckets, patch-speed buckets and the trend
    window. All overridable from config files and CLI flags."""

    severity_low_max: float = 3.9
    severity_medium_max: float = 6.9
    patch_fast_max_days: float = 30.0
    patch_medium_max_days: float = 180.0
    trend_window_years: int = 5

    def __post_init__(self) -> None:
        if not self.severity_low_max < self.severity_medium_max:
            raise ValidationError("severity thresholds must be strictly increasing")
        if not self.patch_fast_max_days < self.patch_medium_max_days:
            raise ValidationError("patch-trend thresholds must be strictly increasing")
        if self.trend_window_years < 1:
            raise ValidationError("trend_window_years must be positive")

    def to_dict(self) -> dict:
        return {
            "severity_low_max": self.severity_low_max,
            "severity_medium_max": self.severity_medium_max,
            "patch_fast_max_days": self.patch_fast_max_days,
            "patch_medium_max_days": self.patch_medium_max_days,
            "trend_window_years": self.trend_window_years,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScoringConfig":
        known = {f: d[f] for f in cls.__dataclass_fields__ if f in d}
        return cls(**known)


def severity_bucket(cvss: float, config: ScoringConfig = ScoringConfig()) -> RiskLevel:
    """Map a CVSS score in [0, 10] onto Low / Medium / High."""
    if not 0.0 <= cvss <= 10.0:
        raise OutOfRange(f"CVSS score {cvss} outside [0, 10]")
    if cvss <= config.severity_low_max:
        return RiskLevel.LOW
    if cvss <= config.severity_medium_max:
        return RiskLevel.MEDIUM
    return RiskLevel.HIGH


def current_device_risk(
    cve_table: Sequence[AssessedVulnerability],
    exceptional: Sequence[ExceptionalRisk],
) -> RiskLevel:
    """Highest severity among the firmware's unpatched CVEs; Low when there
    are none. Any exceptional risk (e.g. key material) forces High."""
    if exceptional:
        return RiskLevel.HIGH
    if not cve_table:
        return RiskLevel.LOW
    return max(v.severity for v in cve_table)


def firmware_vulnerability_trend(
    all_events: Sequence[PatchEvent],
    as_of: date,
    config: ScoringConfig = ScoringConfig(),
) -> VulnTrendLevel:
    """Modal severity of the model's CVEs still unpatched at `as_of`.

    Empty set yields Low; ties break toward the higher level.
    """
    severities = [
        severity_bucket(e.cvss_score, config)
        for e in all_events
        if e.published <= as_of and (e.patched_date is None or e.patched_date > as_of)
    ]
    if not severities:
        return VulnTrendLevel.LOW
    counts = Counter(severities)
    top = max(counts.values())
    worst = max(level for level, n in counts.items() if n == top)
    return {
        RiskLevel.LOW: VulnTrendLevel.LOW,
        RiskLevel.MEDIUM: VulnTrendLevel.MEDIUM,
        RiskLevel.HIGH: VulnTrendLevel.HIGH,
    }[worst]


def model_patch_trend(
    events: Sequence[PatchEvent],
    config: ScoringConfig = ScoringConfig(),
) -> tuple[PatchTrendLevel, Optional[float]]:
    """Mean days from CVE publication to the patching release.

    A vendor with no patched events at all is the slow extreme: Slow with
    an undefined (None) mean.
    """
    latencies = [e.latency_days for e in events if e.latency_days is not None]
    if not latencies:
        return PatchTrendLevel.SLOW, None
    mean = sum(latencies) / len(latencies)
    if mean <= config.patch_fast_max_days:
        return PatchTrendLevel.FAST, mean
    if mean <= config.patch_medium_max_days:
        return PatchTrendLevel.MEDIUM, mean
    return PatchTrendLevel.SLOW, mean


_FUTURE_RISK_MATRIX: dict[VulnTrendLevel, dict[PatchTrendLevel, FutureRiskLevel]] = {
    VulnTrendLevel.LOW: {
        PatchTrendLevel.FAST: FutureRiskLevel.LOW,
        PatchTrendLevel.MEDIUM: FutureRiskLevel.LOW,
        PatchTrendLevel.SLOW: FutureRiskLevel.MEDIUM,
    },
    VulnTrendLevel.MEDIUM: {
        PatchTrendLevel.FAST: FutureRiskLevel.LOW,
        PatchTrendLevel.MEDIUM: FutureRiskLevel.MEDIUM,
        PatchTrendLevel.SLOW: FutureRiskLevel.HIGH,
    },
    VulnTrendLevel.HIGH: {
        PatchTrendLevel.FAST: FutureRiskLevel.MEDIUM,
        PatchTrendLevel.MEDIUM: FutureRiskLevel.HIGH,
        PatchTrendLevel.SLOW: FutureRiskLevel.CRITICAL,
    },
}


def future_risk(vuln_trend: VulnTrendLevel, patch_trend: PatchTrendLevel) -> FutureRiskLevel:
    """Risk-matrix lookup combining the two trends. Total function."""
    return _FUTURE_RISK_MATRIX[vuln_trend][patch_trend]


def trend_series(
    events: Sequence[PatchEvent],
    manifests: Sequence[FirmwareManifest],
    window_years: int,
    as_of: date,
) -> tuple[dict[int, int], dict[int, int]]:
    """Per-year counts of firmware releases and of published CVEs over the
    trailing window ending at `as_of` (inclusive of its calendar year)."""
    first_year = as_of.year - window_years + 1

    def in_window(d: date) -> bool:
        return first_year <= d.year and d <= as_of

    patches: Counter[int] = Counter(
        m.release_date.year for m in manifests if in_window(m.release_date)
    )
    cve_dates = {e.cve_id: e.published for e in events}
    vulns: Counter[int] = Counter(
        pub.year for pub in cve_dates.values() if in_window(pub)
    )
    return dict(patches), dict(vulns)


def _clip_to_as_of(events: Iterable[PatchEvent], as_of: date) -> list[PatchEvent]:
    """Restrict events to what was knowable at `as_of`: drop unpublished
    CVEs, and treat patches released after `as_of` as not yet existing."""
    visible = []
    for e in events:
        if e.published > as_of:
            continue
        if e.patched_date is not None and e.patched_date > as_of:
            e = replace(e, patched_in=None, patched_date=None, latency_days=None)
        visible.append(e)
    return visible


def assemble_assessment(
    device_id: str,
    identity: ModelIdentity,
    cve_table: Sequence[AssessedVulnerability],
    exceptional_risks: Sequence[ExceptionalRisk],
    events: Sequence[PatchEvent],
    history: Sequence[FirmwareManifest],
    config: ScoringConfig,
    as_of: date,
    generated_at: Optional[datetime] = None,
) -> RiskAssessment:
    """Compose the full assessment from enrichment outputs.

    Deterministic for fixed inputs and `as_of`; only generated_at varies.
    """
    # severity descending, ties by published date descending
    visible_table = sorted(
        (v for v in cve_table if v.published <= as_of),
        key=lambda v: (v.severity.rank, v.published),
        reverse=True,
    )
    visible_events = _clip_to_as_of(events, as_of)

    current = current_device_risk(visible_table, exceptional_risks)
    basis = max((v.cvss_score for v in visible_table), default=None)
    vt = firmware_vulnerability_trend(events, as_of, config)
    pt, mean_days = model_patch_trend(visible_events, config)
    patches, vulns = trend_series(
        visible_events, history, config.trend_window_years, as_of
    )
    return RiskAssessment(
        device_id=device_id,
        identity=identity,
        current_risk=current,
        current_risk_basis=basis,
        cve_table=tuple(visible_table),
        exceptional_risks=tuple(exceptional_risks),
        vuln_trend=vt,
        patch_trend=pt,
        patch_trend_mean_days=mean_days,
        future_risk=future_risk(vt, pt),
        patches_per_year=patches,
        vulns_per_year=vulns,
        generated_at=generated_at or datetime.now(timezone.utc),
    )
