import { beforeEach, describe, expect, it } from "vitest";

import { renderGuided } from "../src/render/guided";
import { UiState } from "../src/state";
import type { GuidedPayload, RichPayload } from "../src/types";
import guidedKettle from "../fixtures/guided_kettle.json";
import guidedReader from "../fixtures/guided_reader.json";
import richKettle from "../fixtures/rich_kettle.json";

const kettle = guidedKettle as GuidedPayload;
const reader = guidedReader as GuidedPayload;

let container: HTMLElement;
let state: UiState;

beforeEach(() => {
  document.body.innerHTML = "";
  container = document.createElement("div");
  document.body.appendChild(container);
  state = new UiState();
  state.setViewVersion("guided");
});

describe("guided view: high-risk kettle", () => {
  it("lights exactly the red lamp", () => {
    renderGuided(kettle, container, state);
    const lamps = [...container.querySelectorAll<HTMLElement>(".lamp")];
    expect(lamps).toHaveLength(3);
    const lit = lamps.filter((l) => l.classList.contains("lit"));
    expect(lit).toHaveLength(1);
    expect(lit[0].dataset.color).toBe("Red");
    expect(container.querySelector(".light-label")?.textContent).toBe("RED");
  });

  it("shows two red indicator icons", () => {
    renderGuided(kettle, container, state);
    const red = [...container.querySelectorAll<HTMLElement>(".indicator-icon")].filter(
      (i) => i.dataset.color === "Red"
    );
    expect(red).toHaveLength(2);
    expect(new Set(red.map((i) => i.dataset.kind))).toEqual(
      new Set(["unpatched_vulnerabilities", "key_material"])
    );
  });

  it("renders the narrative paragraphs verbatim and in order", () => {
    renderGuided(kettle, container, state);
    const paragraphs = [...container.querySelectorAll(".narrative p")].map(
      (p) => p.textContent
    );
    expect(paragraphs).toEqual(kettle.narrative);
    expect(paragraphs[0]).toContain("poses a high risk");
  });

  it("shows the tooltip on hover and hides it on leave", () => {
    renderGuided(kettle, container, state);
    const keyIcon = container.querySelector<HTMLElement>(
      '.indicator-icon[data-kind="key_material"]'
    )!;
    const tooltip = container.querySelector<HTMLElement>(".tooltip")!;
    expect(tooltip.hidden).toBe(true);

    keyIcon.dispatchEvent(new MouseEvent("mouseenter"));
    expect(tooltip.hidden).toBe(false);
    const expected = kettle.indicator_icons.find((i) => i.kind === "key_material")!;
    expect(tooltip.textContent).toBe(expected.tooltip);
    expect(tooltip.textContent).toContain(
      "cryptographic key material within the identified firmware"
    );

    keyIcon.dispatchEvent(new MouseEvent("mouseleave"));
    expect(tooltip.hidden).toBe(true);
  });

  it("shows the tooltip on click and toggles it off on a second click", () => {
    renderGuided(kettle, container, state);
    const vulnIcon = container.querySelector<HTMLElement>(
      '.indicator-icon[data-kind="unpatched_vulnerabilities"]'
    )!;
    const tooltip = container.querySelector<HTMLElement>(".tooltip")!;
    vulnIcon.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(tooltip.hidden).toBe(false);
    const expected = kettle.indicator_icons.find(
      (i) => i.kind === "unpatched_vulnerabilities"
    )!;
    expect(tooltip.textContent).toBe(expected.tooltip);
    vulnIcon.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(tooltip.hidden).toBe(true);
  });

  it("keeps at most one tooltip visible when moving between icons", () => {
    renderGuided(kettle, container, state);
    const icons = [...container.querySelectorAll<HTMLElement>(".indicator-icon")];
    icons[0].dispatchEvent(new MouseEvent("mouseenter"));
    icons[1].dispatchEvent(new MouseEvent("mouseenter"));
    const tooltips = [...container.querySelectorAll<HTMLElement>(".tooltip")];
    const visible = tooltips.filter((t) => !t.hidden);
    expect(visible).toHaveLength(1);
    expect(visible[0].textContent).toBe(icons[1].dataset.kind === "key_material"
      ? kettle.indicator_icons.find((i) => i.kind === "key_material")!.tooltip
      : kettle.indicator_icons.find((i) => i.kind !== "key_material")!.tooltip);
  });

  it("shows the same headline risk as the rich view payload", () => {
    expect(kettle.current_risk).toBe((richKettle as RichPayload).current_risk);
    renderGuided(kettle, container, state);
    expect(container.querySelector(".light-label")?.textContent).toBe("RED");
  });
});

describe("guided view: low-risk reader", () => {
  it("lights the green lamp and shows zero red icons", () => {
    renderGuided(reader, container, state);
    const lit = container.querySelectorAll<HTMLElement>(".lamp.lit");
    expect(lit).toHaveLength(1);
    expect(lit[0].dataset.color).toBe("Green");
    const red = [...container.querySelectorAll<HTMLElement>(".indicator-icon")].filter(
      (i) => i.dataset.color === "Red"
    );
    expect(red).toHaveLength(0);
  });
});

describe("guided view: defensive rendering", () => {
  it("renders an error banner when the narrative is empty", () => {
    const broken = { ...kettle, narrative: [] };
    renderGuided(broken, container, state);
    expect(container.querySelector(".error-banner")).not.toBeNull();
    expect(container.querySelector(".guided-view")).toBeNull();
  });

  it("never displays risk text that is not in the payload", () => {
    renderGuided(kettle, container, state);
    const rendered = [...container.querySelectorAll(".narrative p")].map(
      (p) => p.textContent ?? ""
    );
    for (const text of rendered) {
      expect(kettle.narrative).toContain(text);
    }
  });
});
