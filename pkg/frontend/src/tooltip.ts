import { UiState } from "./state.js";

/**
 * Shared tooltip layer for one rendered view. Triggers show their text on
 * hover and on click/tap (touch devices have no hover); the UiState keeps
 * at most one tooltip visible across all triggers.
 */
export class TooltipLayer {
  readonly element: HTMLElement;
  private state: UiState;

  constructor(container: HTMLElement, state: UiState) {
    this.state = state;
    this.element = document.createElement("div");
    this.element.className = "tooltip";
    this.element.setAttribute("role", "tooltip");
    this.element.hidden = true;
    container.appendChild(this.element);
  }

  attach(trigger: HTMLElement, tooltipId: string, text: string): void {
    trigger.dataset.tooltipId = tooltipId;
    trigger.addEventListener("mouseenter", () => {
      this.state.showTooltip(tooltipId);
      this.sync(tooltipId, text);
    });
    trigger.addEventListener("mouseleave", () => {
      this.state.hideTooltip(tooltipId);
      this.sync(tooltipId, text);
    });
    trigger.addEventListener("click", (event) => {
      event.preventDefault();
      event.stopPropagation();
      this.state.toggleTooltip(tooltipId);
      this.sync(tooltipId, text);
    });
  }

  private sync(tooltipId: string, text: string): void {
    if (this.state.activeTooltip === tooltipId) {
      this.element.textContent = text;
      this.element.dataset.forTooltip = tooltipId;
      this.element.hidden = false;
    } else if (this.element.dataset.forTooltip === tooltipId) {
      this.element.hidden = true;
      this.element.textContent = "";
      delete this.element.dataset.forTooltip;
    }
  }
}

export function renderErrorBanner(container: HTMLElement, message: string): void {
  container.textContent = "";
  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.setAttribute("role", "alert");
  banner.textContent = message;
  container.appendChild(banner);
}
