import { colorLabel, colorRank, riskColor } from "../colors.js";
import type { CompareCard, CompareResponse } from "../types.js";

/**
 * Purchase-comparison cards for one category, always displayed best
 * (green) first regardless of arrival order.
 */
export function renderComparison(
  response: CompareResponse,
  container: HTMLElement,
  onOpen?: (card: CompareCard) => void
): void {
  container.textContent = "";
  const view = document.createElement("section");
  view.className = "comparison-view";
  container.appendChild(view);

  const heading = document.createElement("h2");
  heading.textContent = `Devices in category "${response.category}"`;
  view.appendChild(heading);

  if (!response.cards || response.cards.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No assessed models in this category yet.";
    view.appendChild(empty);
    return;
  }

  const sorted = [...response.cards].sort(
    (a, b) =>
      colorRank(a.color) - colorRank(b.color) ||
      a.vendor.localeCompare(b.vendor) ||
      a.model.localeCompare(b.model)
  );

  const grid = document.createElement("div");
  grid.className = "card-grid";
  for (const card of sorted) {
    const article = document.createElement("article");
    article.className = "compare-card";
    article.dataset.color = card.color;

    const badge = document.createElement("div");
    badge.className = "color-badge";
    badge.style.background = riskColor(card.color);
    badge.textContent = colorLabel(card.color);
    article.appendChild(badge);

    const name = document.createElement("h3");
    name.textContent = `${card.vendor} ${card.model}`;
    article.appendChild(name);

    const firmware = document.createElement("p");
    firmware.className = "firmware";
    firmware.textContent = `firmware ${card.firmware_version}`;
    article.appendChild(firmware);

    const future = document.createElement("p");
    future.className = "future-badge";
    future.dataset.level = card.future_risk;
    future.textContent = `future risk: ${card.future_risk}`;
    article.appendChild(future);

    const counts = document.createElement("p");
    counts.className = "counts";
    counts.textContent =
      `${card.unpatched_cve_count} unpatched CVE${card.unpatched_cve_count === 1 ? "" : "s"}` +
      (card.exceptional_risk_count > 0
        ? `, ${card.exceptional_risk_count} exceptional finding${card.exceptional_risk_count === 1 ? "" : "s"}`
        : "");
    article.appendChild(counts);

    const link = document.createElement("a");
    link.className = "card-link";
    link.href = card.link;
    link.textContent = "view full assessment";
    if (onOpen) {
      link.addEventListener("click", (event) => {
        event.preventDefault();
        onOpen(card);
      });
    }
    article.appendChild(link);

    grid.appendChild(article);
  }
  view.appendChild(grid);
}
