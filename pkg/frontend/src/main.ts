import { ApiClient } from "./api.js";
import { renderComparison } from "./render/comparison.js";
import { renderDeviceList } from "./render/devices.js";
import { renderGuided } from "./render/guided.js";
import { renderRich } from "./render/rich.js";
import { UiState } from "./state.js";
import { renderErrorBanner } from "./tooltip.js";

const DEFAULT_BASE = "http://127.0.0.1:8787";

export function bootstrap(root: HTMLElement, baseUrl: string = DEFAULT_BASE): void {
  const api = new ApiClient(baseUrl);
  const state = new UiState();

  root.innerHTML = `
    <div class="layout">
      <aside class="sidebar">
        <h1>devrisk</h1>
        <div class="controls">
          <button type="button" id="refresh">refresh</button>
          <form id="category-form">
            <input id="category-input" placeholder="compare category (e.g. nas)" />
          </form>
        </div>
        <nav id="device-list-slot"></nav>
      </aside>
      <main>
        <div class="view-toggle" role="tablist">
          <button type="button" id="toggle-guided" aria-selected="true">Guided</button>
          <button type="button" id="toggle-rich" aria-selected="false">Rich</button>
        </div>
        <div id="view-slot"><p class="placeholder">Select a device on the left.</p></div>
      </main>
    </div>`;

  const listSlot = root.querySelector<HTMLElement>("#device-list-slot")!;
  const viewSlot = root.querySelector<HTMLElement>("#view-slot")!;
  const guidedButton = root.querySelector<HTMLButtonElement>("#toggle-guided")!;
  const richButton = root.querySelector<HTMLButtonElement>("#toggle-rich")!;

  async function refreshList(): Promise<void> {
    try {
      const body = await api.listDevices();
      renderDeviceList(body.devices, listSlot, (deviceId) => {
        state.selectDevice(deviceId);
        state.setComparison(null);
        void showSelected();
      });
    } catch (err) {
      renderErrorBanner(listSlot, `Could not load devices: ${String(err)}`);
    }
  }

  async function showSelected(): Promise<void> {
    if (state.comparisonCategory) {
      try {
        const body = await api.compareCategory(state.comparisonCategory);
        renderComparison(body, viewSlot);
      } catch (err) {
        renderErrorBanner(viewSlot, `Comparison failed: ${String(err)}`);
      }
      return;
    }
    if (!state.selectedDevice) {
      return;
    }
    try {
      if (state.viewVersion === "guided") {
        renderGuided(await api.getView(state.selectedDevice, "guided"), viewSlot, state);
      } else {
        renderRich(await api.getView(state.selectedDevice, "rich"), viewSlot, state);
      }
    } catch (err) {
      renderErrorBanner(viewSlot, `Could not load the assessment: ${String(err)}`);
    }
  }

  guidedButton.addEventListener("click", () => {
    state.setViewVersion("guided");
    guidedButton.setAttribute("aria-selected", "true");
    richButton.setAttribute("aria-selected", "false");
    void showSelected();
  });
  richButton.addEventListener("click", () => {
    state.setViewVersion("rich");
    guidedButton.setAttribute("aria-selected", "false");
    richButton.setAttribute("aria-selected", "true");
    void showSelected();
  });
  root.querySelector<HTMLButtonElement>("#refresh")!.addEventListener("click", () => {
    void refreshList();
    void showSelected();
  });
  root.querySelector<HTMLFormElement>("#category-form")!.addEventListener("submit", (event) => {
    event.preventDefault();
    const input = root.querySelector<HTMLInputElement>("#category-input")!;
    state.setComparison(input.value.trim() || null);
    void showSelected();
  });

  void refreshList();
}

declare global {
  interface Window {
    devriskBootstrap?: typeof bootstrap;
  }
}

if (typeof window !== "undefined") {
  window.devriskBootstrap = bootstrap;
  const root = document.getElementById("app");
  if (root) {
    const base = root.dataset.apiBase || DEFAULT_BASE;
    bootstrap(root, base);
  }
}
