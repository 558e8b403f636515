import { beforeEach, describe, expect, it } from "vitest";

import { renderComparison } from "../src/render/comparison";
import type { CompareResponse } from "../src/types";
import compareNas from "../fixtures/compare_nas.json";
import compareSmartphone from "../fixtures/compare_smartphone.json";

const smartphone = compareSmartphone as CompareResponse;
const nas = compareNas as CompareResponse;

let container: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "";
  container = document.createElement("div");
  document.body.appendChild(container);
});

function cardColors(): string[] {
  return [...container.querySelectorAll<HTMLElement>(".compare-card")].map(
    (c) => c.dataset.color ?? ""
  );
}

describe("category comparison", () => {
  it("renders exactly one green, one yellow and one red smartphone card", () => {
    renderComparison(smartphone, container);
    expect(cardColors()).toEqual(["Green", "Yellow", "Red"]);
  });

  it("renders exactly one green, one yellow and one red NAS card", () => {
    renderComparison(nas, container);
    expect(cardColors()).toEqual(["Green", "Yellow", "Red"]);
  });

  it("sorts unsorted input best-first", () => {
    const shuffled: CompareResponse = {
      ...smartphone,
      cards: [smartphone.cards[2], smartphone.cards[0], smartphone.cards[1]],
    };
    renderComparison(shuffled, container);
    expect(cardColors()).toEqual(["Green", "Yellow", "Red"]);
  });

  it("shows model name, future-risk badge, counts and a details link", () => {
    renderComparison(nas, container);
    const cards = [...container.querySelectorAll<HTMLElement>(".compare-card")];
    const sorted = [...nas.cards].sort(
      (a, b) =>
        ["Green", "Yellow", "Red"].indexOf(a.color) -
        ["Green", "Yellow", "Red"].indexOf(b.color)
    );
    cards.forEach((card, i) => {
      const expected = sorted[i];
      expect(card.querySelector("h3")?.textContent).toBe(
        `${expected.vendor} ${expected.model}`
      );
      expect(card.querySelector(".future-badge")?.textContent).toContain(
        expected.future_risk
      );
      expect(card.querySelector<HTMLAnchorElement>(".card-link")?.getAttribute("href")).toBe(
        expected.link
      );
      expect(card.querySelector(".color-badge")?.textContent).toBe(
        expected.color.toUpperCase()
      );
    });
  });

  it("invokes the open callback instead of navigating", () => {
    const opened: string[] = [];
    renderComparison(smartphone, container, (card) => opened.push(card.model));
    const firstLink = container.querySelector<HTMLElement>(".card-link")!;
    firstLink.dispatchEvent(new MouseEvent("click", { bubbles: true, cancelable: true }));
    expect(opened).toEqual(["Aster A1"]); // green card is displayed first
  });

  it("renders a single card without error", () => {
    renderComparison({ category: "printer", cards: [nas.cards[0]] }, container);
    expect(container.querySelectorAll(".compare-card")).toHaveLength(1);
    expect(container.querySelector(".empty-state")).toBeNull();
  });

  it("renders an empty-state message when there are no cards", () => {
    renderComparison({ category: "toaster", cards: [] }, container);
    expect(container.querySelector(".empty-state")?.textContent).toContain(
      "No assessed models"
    );
  });
});
