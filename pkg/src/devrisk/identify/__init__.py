"""Device identification: web fingerprints, TCP-timestamp clock skew, and
subjective-logic fusion of the two."""

from devrisk.identify.opinion import (
    IdentityDecision,
    Opinion,
    align_for_fusion,
    decide_identity,
    fuse_opinions,
)
from devrisk.identify.pipeline import IdentificationResult, IdentifyConfig, identify_device
from devrisk.identify.skew import (
    SkewProfile,
    TimestampTrace,
    estimate_clock_skew,
    load_profiles,
    load_trace,
    skew_to_opinion,
    synthesize_trace,
)
from devrisk.identify.webmatch import (
    FingerprintSignature,
    Page,
    Pattern,
    WebCorpus,
    load_corpus,
    load_signatures,
    match_web_patterns,
)

__all__ = [
    "IdentityDecision",
    "Opinion",
    "align_for_fusion",
    "decide_identity",
    "fuse_opinions",
    "IdentificationResult",
    "IdentifyConfig",
    "identify_device",
    "SkewProfile",
    "TimestampTrace",
    "estimate_clock_skew",
    "load_profiles",
    "load_trace",
    "skew_to_opinion",
    "synthesize_trace",
    "FingerprintSignature",
    "Page",
    "Pattern",
    "WebCorpus",
    "load_corpus",
    "load_signatures",
    "match_web_patterns",
]
