import { describe, expect, it } from "vitest";

import { UiState } from "../src/state";

describe("UiState", () => {
  it("keeps at most one tooltip active", () => {
    const state = new UiState();
    state.showTooltip("a");
    state.showTooltip("b");
    expect(state.activeTooltip).toBe("b");
    state.toggleTooltip("b");
    expect(state.activeTooltip).toBeNull();
  });

  it("hideTooltip only hides the matching tooltip", () => {
    const state = new UiState();
    state.showTooltip("a");
    state.hideTooltip("b");
    expect(state.activeTooltip).toBe("a");
    state.hideTooltip("a");
    expect(state.activeTooltip).toBeNull();
  });

  it("panel expansion only works in the rich view", () => {
    const state = new UiState();
    expect(state.togglePanel("risk-score")).toBe(false);
    expect(state.expandedPanels.size).toBe(0);
    state.setViewVersion("rich");
    expect(state.togglePanel("risk-score")).toBe(true);
    expect(state.expandedPanels.has("risk-score")).toBe(true);
    expect(state.togglePanel("risk-score")).toBe(false);
    expect(state.expandedPanels.size).toBe(0);
  });

  it("switching back to guided collapses all panels", () => {
    const state = new UiState();
    state.setViewVersion("rich");
    state.togglePanel("risk-score");
    state.togglePanel("future-risk");
    state.setViewVersion("guided");
    expect(state.expandedPanels.size).toBe(0);
  });

  it("selecting a device resets transient view state", () => {
    const state = new UiState();
    state.setViewVersion("rich");
    state.togglePanel("risk-score");
    state.showTooltip("x");
    state.selectDevice("dev-1");
    expect(state.selectedDevice).toBe("dev-1");
    expect(state.expandedPanels.size).toBe(0);
    expect(state.activeTooltip).toBeNull();
  });
});
