/** Payload shapes as served by the assessment service. */

export type Color = "Green" | "Yellow" | "Red";
export type RiskLevel = "Low" | "Medium" | "High";
export type FutureRiskLevel = "Low" | "Medium" | "High" | "Critical";

export interface DeviceSummary {
  device_id: string;
  device_type: string;
  network_address: string;
  category: "Business" | "Private";
  owner: string;
  vendor: string | null;
  model: string | null;
  firmware_version: string | null;
  version_assumed?: boolean;
  identification_confidence: number | null;
}

export interface IndicatorIcon {
  kind: "unpatched_vulnerabilities" | "key_material" | "exceptional_risk";
  color: Color;
  tooltip: string;
}

export interface GuidedPayload {
  view_version: "guided";
  device: DeviceSummary;
  traffic_light: Color;
  current_risk: RiskLevel;
  future_risk: FutureRiskLevel;
  unpatched_cve_count: number;
  exceptional_risk_count: number;
  narrative: string[];
  indicator_icons: IndicatorIcon[];
  generated_at: string;
}

export interface CveRow {
  cve_id: string;
  cvss_score: number;
  severity: RiskLevel;
  published: string;
  patched_in: string | null;
  patch_latency_days: number | null;
  exploitation_probability: number | null;
}

export interface ExceptionalRisk {
  kind: string;
  description: string;
  evidence: string;
}

export interface RichPayload {
  view_version: "rich";
  device: DeviceSummary;
  current_risk: RiskLevel;
  future_risk: FutureRiskLevel;
  risk_score_panel: {
    current_risk: RiskLevel;
    current_risk_basis: number | null;
    cve_table: CveRow[];
    exceptional_risks: ExceptionalRisk[];
  };
  future_panel: {
    future_risk: FutureRiskLevel;
    vuln_trend: RiskLevel;
    patch_trend: "Fast" | "Medium" | "Slow";
    patch_trend_mean_days: number | null;
    patches_per_year: Record<string, number>;
    vulns_per_year: Record<string, number>;
  };
  section_tooltips: Record<string, string>;
  generated_at: string;
}

export interface CompareCard {
  vendor: string;
  model: string;
  firmware_version: string;
  current_risk: RiskLevel;
  color: Color;
  future_risk: FutureRiskLevel;
  unpatched_cve_count: number;
  exceptional_risk_count: number;
  link: string;
}

export interface CompareResponse {
  category: string;
  cards: CompareCard[];
}

export interface DeviceListRow {
  device_id: string;
  device_type: string;
  network_address: string;
  category: "Business" | "Private";
  owner: string;
  current_risk: RiskLevel | null;
  color: Color | null;
  future_risk: FutureRiskLevel | null;
}
