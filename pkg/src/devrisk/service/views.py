"""Guided and Rich view payloads.

Both views derive from the same assessment and must carry the same key
information: current risk, future risk, exceptional-risk count and CVE
count are extractable from either payload. Narrative wording is
template-generated from a copy table shipped as data, with verb strength
matched to the risk level.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from devrisk.model import (
    DeviceRecord,
    ExceptionalRiskKind,
    RiskAssessment,
    RiskLevel,
    risk_color,
)

GUIDED = "guided"
RICH = "rich"


@lru_cache(maxsize=1)
def narrative_copy() -> dict:
    ref = resources.files("devrisk").joinpath("data/narrative_copy.json")
    return json.loads(ref.read_text(encoding="utf-8"))


def device_summary(device: DeviceRecord) -> dict:
    ident = device.identity
    return {
        "device_id": device.device_id,
        "device_type": device.device_type,
        "network_address": device.network_address,
        "category": device.category.value,
        "owner": device.owner,
        "vendor": ident.vendor if ident else None,
        "model": ident.model if ident else None,
        "firmware_version": ident.firmware_version if ident else None,
        "version_assumed": device.version_assumed,
        "identification_confidence": device.confidence,
    }


def _indicator_icons(assessment: RiskAssessment, copy: dict) -> list[dict]:
    icons = []
    if assessment.cve_table:
        worst = max(v.severity for v in assessment.cve_table)
        count = len(assessment.cve_table)
        icons.append(
            {
                "kind": "unpatched_vulnerabilities",
                "color": risk_color(worst).value,
                "tooltip": copy["icon_tooltips"]["unpatched_vulnerabilities"].format(
                    count=count,
                    noun="vulnerability" if count == 1 else "vulnerabilities",
                    severity=worst.value.lower(),
                ),
            }
        )
    for risk in assessment.exceptional_risks:
        if risk.kind is ExceptionalRiskKind.PRIVATE_KEY_MATERIAL:
            tooltip = copy["icon_tooltips"]["key_material"]
        else:
            tooltip = risk.description
        icons.append(
            {
                "kind": "key_material"
                if risk.kind is ExceptionalRiskKind.PRIVATE_KEY_MATERIAL
                else "exceptional_risk",
                "color": risk_color(RiskLevel.HIGH).value,
                "tooltip": tooltip,
            }
        )
    return icons


def _narrative(device: DeviceRecord, assessment: RiskAssessment, copy: dict) -> list[str]:
    risk_sentence = copy["risk_sentences"][assessment.current_risk.value]
    trend_sentence = copy["trend_sentence"].format(
        vendor=assessment.identity.vendor,
        model=assessment.identity.model,
        vuln_trend=assessment.vuln_trend.value.lower(),
        patch_trend=assessment.patch_trend.value.lower(),
        future_risk=assessment.future_risk.value.lower(),
    )
    if assessment.exceptional_risks:
        seen = list(dict.fromkeys(r.description for r in assessment.exceptional_risks))
        exceptional_sentence = " ".join(seen)
    else:
        exceptional_sentence = copy["exceptional_none"]
    return [risk_sentence, trend_sentence, exceptional_sentence]


def build_guided(device: DeviceRecord, assessment: RiskAssessment) -> dict:
    copy = narrative_copy()
    return {
        "view_version": GUIDED,
        "device": device_summary(device),
        "traffic_light": risk_color(assessment.current_risk).value,
        "current_risk": assessment.current_risk.value,
        "future_risk": assessment.future_risk.value,
        "unpatched_cve_count": len(assessment.cve_table),
        "exceptional_risk_count": len(assessment.exceptional_risks),
        "narrative": _narrative(device, assessment, copy),
        "indicator_icons": _indicator_icons(assessment, copy),
        "generated_at": assessment.generated_at.isoformat(),
    }


def build_rich(device: DeviceRecord, assessment: RiskAssessment) -> dict:
    copy = narrative_copy()
    return {
        "view_version": RICH,
        "device": device_summary(device),
        "current_risk": assessment.current_risk.value,
        "future_risk": assessment.future_risk.value,
        "risk_score_panel": {
            "current_risk": assessment.current_risk.value,
            "current_risk_basis": assessment.current_risk_basis,
            "cve_table": [v.to_dict() for v in assessment.cve_table],
            "exceptional_risks": [r.to_dict() for r in assessment.exceptional_risks],
        },
        "future_panel": {
            "future_risk": assessment.future_risk.value,
            "vuln_trend": assessment.vuln_trend.value,
            "patch_trend": assessment.patch_trend.value,
            "patch_trend_mean_days": assessment.patch_trend_mean_days,
            "patches_per_year": {
                str(y): n for y, n in sorted(assessment.patches_per_year.items())
            },
            "vulns_per_year": {
                str(y): n for y, n in sorted(assessment.vulns_per_year.items())
            },
        },
        "section_tooltips": dict(copy["section_tooltips"]),
        "generated_at": assessment.generated_at.isoformat(),
    }
