"""View payload invariants: traffic light mapping, narrative wording,
indicator icons, and the same-key-information property."""

from devrisk.model import RiskAssessment, risk_color
from devrisk.service.engine import STATUS_OK


def _views_for(demo_results, key_device_type):
    engine = demo_results["engine"]
    for r in demo_results["results"]:
        if r["device"]["device_type"] == key_device_type:
            device_id = r["device"]["device_id"]
            return (
                engine.get_view(device_id, "guided"),
                engine.get_view(device_id, "rich"),
            )
    raise AssertionError(f"no demo device of type {key_device_type}")


def test_kettle_guided_high_risk_narrative_and_icons(demo_results):
    guided, _ = _views_for(demo_results, "Smart Kettle")
    assert guided["traffic_light"] == "Red"
    assert "poses a high risk" in guided["narrative"][0]
    red_icons = [i for i in guided["indicator_icons"] if i["color"] == "Red"]
    assert len(red_icons) == 2
    assert {i["kind"] for i in red_icons} == {"unpatched_vulnerabilities", "key_material"}
    key_icon = next(i for i in red_icons if i["kind"] == "key_material")
    assert "cryptographic key material within the identified firmware" in key_icon["tooltip"]
    vuln_icon = next(i for i in red_icons if i["kind"] == "unpatched_vulnerabilities")
    assert "unpatched" in vuln_icon["tooltip"]


def test_low_risk_guided_green_and_no_red_icons(demo_results):
    guided, _ = _views_for(demo_results, "E-Book Reader")
    assert guided["traffic_light"] == "Green"
    assert [i for i in guided["indicator_icons"] if i["color"] == "Red"] == []
    assert guided["indicator_icons"] == []  # nothing to flag at all
    assert "poses a low risk" in guided["narrative"][0]


def test_medium_risk_guided_yellow_with_yellow_vuln_icon(demo_results):
    guided, _ = _views_for(demo_results, "Smartphone")
    assert guided["traffic_light"] == "Yellow"
    icons = guided["indicator_icons"]
    assert len(icons) == 1
    assert icons[0]["kind"] == "unpatched_vulnerabilities"
    assert icons[0]["color"] == "Yellow"


def test_traffic_light_always_matches_current_risk(demo_results):
    engine = demo_results["engine"]
    for r in demo_results["results"]:
        assert r["record"]["status"] == STATUS_OK
        assessment = RiskAssessment.from_dict(r["record"]["assessment"])
        guided = engine.get_view(r["device"]["device_id"], "guided")
        assert guided["traffic_light"] == risk_color(assessment.current_risk).value


def test_narrative_has_three_ordered_paragraphs(demo_results):
    guided, _ = _views_for(demo_results, "Printer")
    assert len(guided["narrative"]) == 3
    risk_sentence, trend_sentence, exceptional_sentence = guided["narrative"]
    assert "poses a high risk" in risk_sentence
    assert "patch trend" in trend_sentence
    assert "future risk" in trend_sentence
    assert exceptional_sentence  # present even when there are no findings


def test_rich_panels_carry_trends_and_sorted_table(demo_results):
    _, rich = _views_for(demo_results, "Smart Kettle")
    panel = rich["future_panel"]
    assert panel["vuln_trend"] == "High"
    assert panel["patch_trend"] == "Slow"
    assert panel["future_risk"] == "Critical"
    assert panel["patch_trend_mean_days"] is None
    table = rich["risk_score_panel"]["cve_table"]
    assert [v["cve_id"] for v in table] == [
        "CVE-2018-9901",
        "CVE-2017-7721",
        "CVE-2019-5544",
    ]
    severities = [v["severity"] for v in table]
    ranks = [["Low", "Medium", "High"].index(s) for s in severities]
    assert ranks == sorted(ranks, reverse=True)


def test_rich_has_section_tooltips(demo_results):
    _, rich = _views_for(demo_results, "Connected Storage (NAS)")
    tooltips = rich["section_tooltips"]
    for section in ("Device Risk Score", "Future Risk Estimation", "Model Patch Trend"):
        assert section in tooltips
        assert tooltips[section]


def test_kettle_patches_per_year_peaks_at_two(demo_results):
    _, rich = _views_for(demo_results, "Smart Kettle")
    series = rich["future_panel"]["patches_per_year"]
    assert max(series.values()) == 2
    assert series == {"2017": 2, "2018": 1}


def test_same_key_information_property(demo_results):
    """Guided and Rich payloads agree on the four key facts for every
    fixture device."""
    engine = demo_results["engine"]
    for r in demo_results["results"]:
        device_id = r["device"]["device_id"]
        guided = engine.get_view(device_id, "guided")
        rich = engine.get_view(device_id, "rich")
        assert guided["current_risk"] == rich["current_risk"]
        assert guided["future_risk"] == rich["future_panel"]["future_risk"]
        assert guided["exceptional_risk_count"] == len(
            rich["risk_score_panel"]["exceptional_risks"]
        )
        assert guided["unpatched_cve_count"] == len(rich["risk_score_panel"]["cve_table"])
