"""Web-pattern matching: the matched-weight-fraction rule and its edge
cases, plus the weight-rescaling invariance used by decide_identity."""

import pytest

from devrisk.errors import EmptyCorpus
from devrisk.identify.opinion import decide_identity
from devrisk.identify.webmatch import (
    FingerprintSignature,
    Page,
    Pattern,
    PatternLocation,
    WebCorpus,
    match_web_patterns,
)
from devrisk.model import ModelIdentity

KETTLE = ModelIdentity("Brewell", "HotDrop 3000", "1.1")
TOASTER = ModelIdentity("Brewell", "CrispMaster", "2.0")


def page(body="", url="http://10.0.0.1/", headers=(), status=200):
    return Page(url=url, status=status, headers=tuple(headers), body=body)


def sig(identity, *patterns, signature_id="sig"):
    return FingerprintSignature(
        signature_id=signature_id, identity=identity, patterns=tuple(patterns)
    )


def body_pattern(text, weight=1.0):
    return Pattern(location=PatternLocation.BODY, match=text, weight=weight)


def test_full_match_capped_at_095():
    s = sig(KETTLE, body_pattern("HotDrop", 1.0), body_pattern("Brewell", 1.0))
    corpus = WebCorpus("d", (page(body="Brewell HotDrop 3000 panel"),))
    op = match_web_patterns(corpus, [s])
    assert op.belief_of(KETTLE) == pytest.approx(0.95)
    assert op.uncertainty == pytest.approx(0.05)
    assert op.base_rate_of(KETTLE) == pytest.approx(1.0)


def test_no_match_is_vacuous_not_error():
    s = sig(KETTLE, body_pattern("HotDrop"))
    corpus = WebCorpus("d", (page(body="nothing relevant here"),))
    op = match_web_patterns(corpus, [s])
    assert op.is_vacuous
    assert op.uncertainty == 1.0
    assert op.hypotheses == ()


def test_half_weight_match_gives_belief_half():
    s = sig(KETTLE, body_pattern("HotDrop", 1.0), body_pattern("absent-string", 1.0))
    corpus = WebCorpus("d", (page(body="HotDrop kettle"),))
    op = match_web_patterns(corpus, [s])
    assert op.belief_of(KETTLE) == pytest.approx(0.5)
    assert op.uncertainty == pytest.approx(0.5)


def test_two_candidates_split_proportionally_to_fraction():
    s1 = sig(KETTLE, body_pattern("HotDrop", 1.0), signature_id="s1")
    s2 = sig(
        TOASTER,
        body_pattern("Brewell", 1.0),
        body_pattern("CrispMaster", 1.0),
        signature_id="s2",
    )
    corpus = WebCorpus("d", (page(body="Brewell HotDrop"),))
    op = match_web_patterns(corpus, [s1, s2])
    # f(kettle) = 1.0, f(toaster) = 0.5; total belief = max f = 0.95
    assert op.belief_of(KETTLE) == pytest.approx(0.95 * 1.0 / 1.5)
    assert op.belief_of(TOASTER) == pytest.approx(0.95 * 0.5 / 1.5)
    assert op.uncertainty == pytest.approx(0.05)


def test_empty_corpus_is_an_error():
    s = sig(KETTLE, body_pattern("HotDrop"))
    with pytest.raises(EmptyCorpus):
        match_web_patterns(WebCorpus("d", ()), [s])


def test_header_and_url_and_regex_locations():
    s = sig(
        KETTLE,
        Pattern(location=PatternLocation.HEADER, header_name="Server", match="uhttpd", weight=1.0),
        Pattern(location=PatternLocation.URL, match="/kettle/api", weight=1.0),
        Pattern(location=PatternLocation.BODY, match=r"[Ff]irmware v?1\.1", kind="regex", weight=1.0),
    )
    corpus = WebCorpus(
        "d",
        (
            page(
                body="Firmware v1.1 ready",
                url="http://10.0.0.1/kettle/api/status",
                headers=(("server", "uhttpd/1.0"),),
            ),
        ),
    )
    op = match_web_patterns(corpus, [s])
    assert op.belief_of(KETTLE) == pytest.approx(0.95)


def test_uniform_weight_rescaling_preserves_opinion_and_decision():
    def build(scale):
        s1 = sig(
            KETTLE,
            body_pattern("HotDrop", 2.0 * scale),
            body_pattern("missing", 1.0 * scale),
            signature_id="s1",
        )
        s2 = sig(TOASTER, body_pattern("Brewell", 1.5 * scale), signature_id="s2")
        corpus = WebCorpus("d", (page(body="Brewell HotDrop"),))
        return match_web_patterns(corpus, [s1, s2])

    base = build(1.0)
    for scale in (0.25, 3.0, 17.5):
        scaled = build(scale)
        for x in base.hypotheses:
            assert scaled.belief_of(x) == pytest.approx(base.belief_of(x), abs=1e-12)
        assert (
            decide_identity(scaled, threshold=0.3, margin=0.0).identity
            == decide_identity(base, threshold=0.3, margin=0.0).identity
        )


def test_best_fraction_wins_for_duplicate_identity_signatures():
    s1 = sig(KETTLE, body_pattern("HotDrop", 1.0), body_pattern("missing", 1.0), signature_id="weak")
    s2 = sig(KETTLE, body_pattern("HotDrop", 1.0), signature_id="strong")
    corpus = WebCorpus("d", (page(body="HotDrop"),))
    op = match_web_patterns(corpus, [s1, s2])
    assert op.belief_of(KETTLE) == pytest.approx(0.95)
