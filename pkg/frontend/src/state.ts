/**
 * Client-side UI state. The rules the rest of the app relies on:
 * at most one tooltip is visible at a time, and panel expansion only
 * means anything in the rich view.
 */

export type ViewVersion = "guided" | "rich";

export class UiState {
  selectedDevice: string | null = null;
  viewVersion: ViewVersion = "guided";
  expandedPanels = new Set<string>();
  activeTooltip: string | null = null;
  comparisonCategory: string | null = null;

  selectDevice(deviceId: string): void {
    this.selectedDevice = deviceId;
    this.expandedPanels.clear();
    this.activeTooltip = null;
  }

  setViewVersion(version: ViewVersion): void {
    this.viewVersion = version;
    if (version !== "rich") {
      this.expandedPanels.clear();
    }
    this.activeTooltip = null;
  }

  /** Show a tooltip, hiding whichever one was visible before. */
  showTooltip(tooltipId: string): void {
    this.activeTooltip = tooltipId;
  }

  hideTooltip(tooltipId?: string): void {
    if (tooltipId === undefined || this.activeTooltip === tooltipId) {
      this.activeTooltip = null;
    }
  }

  /** Click toggles; a second click on the same trigger dismisses. */
  toggleTooltip(tooltipId: string): void {
    this.activeTooltip = this.activeTooltip === tooltipId ? null : tooltipId;
  }

  togglePanel(panelId: string): boolean {
    if (this.viewVersion !== "rich") {
      return false;
    }
    if (this.expandedPanels.has(panelId)) {
      this.expandedPanels.delete(panelId);
      return false;
    }
    this.expandedPanels.add(panelId);
    return true;
  }

  setComparison(category: string | null): void {
    this.comparisonCategory = category;
  }
}
