"""End-to-end device identification: match both evidence sources, fuse
their opinions, decide, and resolve wildcard firmware versions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from devrisk.errors import IdentificationFailed
from devrisk.identify.opinion import (
    IdentityDecision,
    Opinion,
    align_for_fusion,
    decide_identity,
    fuse_opinions,
)
from devrisk.identify.skew import (
    DEFAULT_BELIEF_TOTAL,
    DEFAULT_Z_MAX,
    SkewProfile,
    TimestampTrace,
    estimate_clock_skew,
    skew_to_opinion,
)
from devrisk.identify.webmatch import (
    DEFAULT_BELIEF_CAP,
    FingerprintSignature,
    WebCorpus,
    match_web_patterns,
)


@dataclass(frozen=True)
class IdentifyConfig:
    web_belief_cap: float = DEFAULT_BELIEF_CAP
    skew_belief_total: float = DEFAULT_BELIEF_TOTAL
    skew_z_max: float = DEFAULT_Z_MAX
    decision_threshold: float = 0.6
    decision_margin: float = 0.05


@dataclass(frozen=True)
class IdentificationResult:
    opinion: Opinion
    decision: IdentityDecision
    skew_ppm: Optional[float] = None
    version_assumed: bool = False

    def to_dict(self) -> dict:
        return {
            "opinion": self.opinion.to_dict(),
            "decision": self.decision.to_dict(),
            "skew_ppm": self.skew_ppm,
            "version_assumed": self.version_assumed,
        }


def identify_device(
    corpus: Optional[WebCorpus],
    trace: Optional[TimestampTrace],
    signatures: Sequence[FingerprintSignature],
    profiles: Sequence[SkewProfile],
    config: IdentifyConfig = IdentifyConfig(),
    resolve_latest_version: Optional[Callable[[str, str], Optional[str]]] = None,
) -> IdentificationResult:
    """Run whichever evidence sources are available and fuse them.

    resolve_latest_version maps (vendor, model) to the newest known
    firmware version; it backs the fallback rule for signatures that pin a
    model but not a version (decision flagged version_assumed).
    """
    opinions: list[Opinion] = []
    skew_ppm: Optional[float] = None
    if corpus is not None and signatures:
        opinions.append(
            match_web_patterns(corpus, signatures, belief_cap=config.web_belief_cap)
        )
    if trace is not None and profiles:
        skew_ppm = estimate_clock_skew(trace)
        opinions.append(
            skew_to_opinion(
                skew_ppm,
                profiles,
                belief_total=config.skew_belief_total,
                z_max=config.skew_z_max,
            )
        )
    if not opinions:
        raise IdentificationFailed("no usable evidence source for this device")

    fused = opinions[0]
    for other in opinions[1:]:
        a, b = align_for_fusion(fused, other)
        fused = fuse_opinions(a, b)

    decision = decide_identity(
        fused, threshold=config.decision_threshold, margin=config.decision_margin
    )
    version_assumed = False
    if decision.identified and decision.identity.is_wildcard:
        resolved = None
        if resolve_latest_version is not None:
            resolved = resolve_latest_version(
                decision.identity.vendor, decision.identity.model
            )
        if resolved is not None:
            decision = IdentityDecision(
                identity=decision.identity.with_version(resolved),
                confidence=decision.confidence,
                projected=decision.projected,
            )
            version_assumed = True
    return IdentificationResult(
        opinion=fused,
        decision=decision,
        skew_ppm=skew_ppm,
        version_assumed=version_assumed,
    )
