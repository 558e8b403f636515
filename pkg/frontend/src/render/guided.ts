import { COLOR_ORDER, colorLabel, riskColor } from "../colors.js";
import { UiState } from "../state.js";
import { TooltipLayer, renderErrorBanner } from "../tooltip.js";
import type { GuidedPayload } from "../types.js";

function validGuided(payload: GuidedPayload): boolean {
  return Boolean(
    payload &&
      payload.view_version === "guided" &&
      payload.device &&
      COLOR_ORDER.includes(payload.traffic_light) &&
      Array.isArray(payload.narrative) &&
      payload.narrative.length > 0 &&
      payload.narrative.every((p) => typeof p === "string" && p.length > 0) &&
      Array.isArray(payload.indicator_icons)
  );
}

/**
 * Traffic light, narrative paragraphs and indicator icons. All text comes
 * verbatim from the payload; nothing is synthesized here.
 */
export function renderGuided(
  payload: GuidedPayload,
  container: HTMLElement,
  state: UiState
): void {
  if (!validGuided(payload)) {
    renderErrorBanner(container, "Could not render this assessment: unexpected payload.");
    return;
  }
  container.textContent = "";
  const view = document.createElement("section");
  view.className = "guided-view";
  container.appendChild(view);
  const tooltips = new TooltipLayer(container, state);

  const heading = document.createElement("header");
  heading.className = "device-heading";
  const title = document.createElement("h2");
  title.textContent = payload.device.device_type;
  const subtitle = document.createElement("p");
  subtitle.className = "device-subtitle";
  const identity = [payload.device.vendor, payload.device.model, payload.device.firmware_version]
    .filter((part) => part !== null)
    .join(" ");
  subtitle.textContent = identity
    ? `${identity} · ${payload.device.network_address}`
    : payload.device.network_address;
  heading.append(title, subtitle);
  view.appendChild(heading);

  const light = document.createElement("div");
  light.className = "traffic-light";
  light.setAttribute("role", "img");
  light.setAttribute("aria-label", `overall risk: ${colorLabel(payload.traffic_light)}`);
  for (const color of [...COLOR_ORDER].reverse()) {
    const lamp = document.createElement("div");
    lamp.className = "lamp";
    lamp.dataset.color = color;
    if (color === payload.traffic_light) {
      lamp.classList.add("lit");
      lamp.style.background = riskColor(color);
    }
    light.appendChild(lamp);
  }
  const lightLabel = document.createElement("span");
  lightLabel.className = "light-label";
  lightLabel.textContent = colorLabel(payload.traffic_light);
  view.append(light, lightLabel);

  const narrative = document.createElement("div");
  narrative.className = "narrative";
  for (const paragraph of payload.narrative) {
    const p = document.createElement("p");
    p.textContent = paragraph;
    narrative.appendChild(p);
  }
  view.appendChild(narrative);

  const icons = document.createElement("div");
  icons.className = "indicators";
  payload.indicator_icons.forEach((icon, index) => {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "indicator-icon";
    button.dataset.kind = icon.kind;
    button.dataset.color = icon.color;
    button.style.background = riskColor(icon.color);
    button.setAttribute(
      "aria-label",
      `${icon.kind.replace(/_/g, " ")} (${colorLabel(icon.color)})`
    );
    button.textContent = icon.kind === "unpatched_vulnerabilities" ? "!" : "⚿";
    tooltips.attach(button, `icon-${index}`, icon.tooltip);
    icons.appendChild(button);
  });
  view.appendChild(icons);
}
