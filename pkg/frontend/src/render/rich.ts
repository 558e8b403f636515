import { colorLabel, riskColor } from "../colors.js";
import { UiState } from "../state.js";
import { TooltipLayer, renderErrorBanner } from "../tooltip.js";
import type { Color, RichPayload, RiskLevel } from "../types.js";

const CVE_COLUMNS: Array<[string, (row: RichPayload["risk_score_panel"]["cve_table"][number]) => string]> = [
  ["CVE", (row) => row.cve_id],
  ["CVSS", (row) => row.cvss_score.toFixed(1)],
  ["Severity", (row) => row.severity],
  ["Published", (row) => row.published],
  ["Patched in", (row) => row.patched_in ?? "—"],
  [
    "Exploitation probability",
    (row) =>
      row.exploitation_probability === null
        ? "—"
        : `${Math.round(row.exploitation_probability * 100)}%`,
  ],
];

function riskToColor(level: RiskLevel): Color {
  switch (level) {
    case "High":
      return "Red";
    case "Medium":
      return "Yellow";
    case "Low":
      return "Green";
  }
}

function badge(text: string, color?: Color): HTMLElement {
  const el = document.createElement("span");
  el.className = "badge";
  el.textContent = text;
  if (color) {
    el.dataset.color = color;
    el.style.background = riskColor(color);
    el.title = colorLabel(color);
  }
  return el;
}

function validRich(payload: RichPayload): boolean {
  return Boolean(
    payload &&
      payload.view_version === "rich" &&
      payload.device &&
      payload.risk_score_panel &&
      Array.isArray(payload.risk_score_panel.cve_table) &&
      payload.future_panel &&
      payload.section_tooltips
  );
}

/**
 * Two expandable panels: the device risk score (with the CVE table, in
 * the exact order the service sorted it) and the future risk estimation
 * (trends plus the per-year release bars). Section titles show their
 * tooltip from the payload on hover or click.
 */
export function renderRich(
  payload: RichPayload,
  container: HTMLElement,
  state: UiState
): void {
  if (!validRich(payload)) {
    renderErrorBanner(container, "Could not render this assessment: unexpected payload.");
    return;
  }
  container.textContent = "";
  const view = document.createElement("section");
  view.className = "rich-view";
  container.appendChild(view);
  const tooltips = new TooltipLayer(container, state);

  const heading = document.createElement("header");
  heading.className = "device-heading";
  const title = document.createElement("h2");
  title.textContent = payload.device.device_type;
  const headline = badge(payload.current_risk, riskToColor(payload.current_risk));
  headline.classList.add("headline-risk");
  heading.append(title, headline);
  view.appendChild(heading);

  view.appendChild(
    panel("Device Risk Score", "risk-score", state, tooltips, payload.section_tooltips, (body) => {
      const summary = document.createElement("p");
      summary.append("Current risk: ", badge(payload.risk_score_panel.current_risk, riskToColor(payload.risk_score_panel.current_risk)));
      if (payload.risk_score_panel.current_risk_basis !== null) {
        summary.append(` (highest unpatched CVSS ${payload.risk_score_panel.current_risk_basis.toFixed(1)})`);
      }
      body.appendChild(summary);

      for (const risk of payload.risk_score_panel.exceptional_risks) {
        const note = document.createElement("p");
        note.className = "exceptional-risk";
        note.textContent = risk.description;
        body.appendChild(note);
      }

      if (payload.risk_score_panel.cve_table.length === 0) {
        const empty = document.createElement("p");
        empty.className = "empty-table";
        empty.textContent = "No known vulnerabilities for the identified firmware.";
        body.appendChild(empty);
        return;
      }
      const table = document.createElement("table");
      table.className = "cve-table";
      const thead = document.createElement("thead");
      const headRow = document.createElement("tr");
      for (const [label] of CVE_COLUMNS) {
        const th = document.createElement("th");
        th.textContent = label;
        headRow.appendChild(th);
      }
      thead.appendChild(headRow);
      table.appendChild(thead);
      const tbody = document.createElement("tbody");
      for (const row of payload.risk_score_panel.cve_table) {
        const tr = document.createElement("tr");
        tr.dataset.cve = row.cve_id;
        for (const [, cell] of CVE_COLUMNS) {
          const td = document.createElement("td");
          td.textContent = cell(row);
          tr.appendChild(td);
        }
        tbody.appendChild(tr);
      }
      table.appendChild(tbody);
      body.appendChild(table);
    })
  );

  view.appendChild(
    panel("Future Risk Estimation", "future-risk", state, tooltips, payload.section_tooltips, (body) => {
      const fp = payload.future_panel;
      const trends = document.createElement("p");
      trends.className = "trend-badges";
      trends.append(
        "Future risk: ",
        badge(fp.future_risk, fp.future_risk === "Critical" ? "Red" : riskToColor(fp.future_risk as RiskLevel)),
        " · Firmware vulnerability trend: ",
        badge(fp.vuln_trend, riskToColor(fp.vuln_trend)),
        " · Model patch trend: ",
        badge(fp.patch_trend)
      );
      if (fp.patch_trend_mean_days !== null) {
        trends.append(` (mean ${fp.patch_trend_mean_days.toFixed(1)} days to patch)`);
      } else {
        trends.append(" (no patching release on record)");
      }
      body.appendChild(trends);

      body.appendChild(barChart("Patches per year", fp.patches_per_year));

      const vulnsLine = document.createElement("p");
      vulnsLine.className = "vulns-per-year";
      const parts = Object.entries(fp.vulns_per_year)
        .sort(([a], [b]) => a.localeCompare(b))
        .map(([year, count]) => `${year}: ${count}`);
      vulnsLine.textContent = parts.length
        ? `Vulnerabilities published per year — ${parts.join(", ")}`
        : "No vulnerabilities published in the trend window.";
      body.appendChild(vulnsLine);
    })
  );
}

function panel(
  titleText: string,
  panelId: string,
  state: UiState,
  tooltips: TooltipLayer,
  sectionTooltips: Record<string, string>,
  fillBody: (body: HTMLElement) => void
): HTMLElement {
  const section = document.createElement("section");
  section.className = "panel";
  section.dataset.panel = panelId;

  const header = document.createElement("button");
  header.type = "button";
  header.className = "panel-header";
  header.setAttribute("aria-expanded", "false");
  const titleSpan = document.createElement("span");
  titleSpan.className = "panel-title";
  titleSpan.textContent = titleText;
  const marker = document.createElement("span");
  marker.className = "panel-marker";
  marker.textContent = "+";
  header.append(titleSpan, marker);

  const tooltipText = sectionTooltips[titleText];
  if (tooltipText) {
    tooltips.attach(titleSpan, `section-${panelId}`, tooltipText);
  }

  const body = document.createElement("div");
  body.className = "panel-body";
  body.hidden = true;
  fillBody(body);

  header.addEventListener("click", () => {
    const expanded = state.togglePanel(panelId);
    body.hidden = !expanded;
    header.setAttribute("aria-expanded", String(expanded));
    marker.textContent = expanded ? "−" : "+";
  });

  section.append(header, body);
  return section;
}

function barChart(caption: string, series: Record<string, number>): HTMLElement {
  const wrapper = document.createElement("figure");
  wrapper.className = "bar-chart";
  const entries = Object.entries(series).sort(([a], [b]) => a.localeCompare(b));
  const max = entries.reduce((m, [, v]) => Math.max(m, v), 0);
  wrapper.dataset.max = String(max);

  const chart = document.createElement("div");
  chart.className = "bars";
  for (const [year, count] of entries) {
    const column = document.createElement("div");
    column.className = "bar-column";
    const bar = document.createElement("div");
    bar.className = "bar";
    bar.dataset.year = year;
    bar.dataset.count = String(count);
    bar.style.height = max > 0 ? `${(count / max) * 96}px` : "0px";
    const value = document.createElement("span");
    value.className = "bar-value";
    value.textContent = String(count);
    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = year;
    column.append(value, bar, label);
    chart.appendChild(column);
  }
  const figcaption = document.createElement("figcaption");
  figcaption.textContent = caption;
  wrapper.append(chart, figcaption);
  return wrapper;
}
