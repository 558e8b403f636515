import { beforeEach, describe, expect, it, vi } from "vitest";

import { bootstrap } from "../src/main";
import devices from "../fixtures/devices.json";
import guidedKettle from "../fixtures/guided_kettle.json";
import richKettle from "../fixtures/rich_kettle.json";
import compareNas from "../fixtures/compare_nas.json";

const kettleId = (guidedKettle as { device: { device_id: string } }).device.device_id;

function stubFetch(): void {
  vi.stubGlobal(
    "fetch",
    vi.fn(async (url: string) => {
      const path = String(url);
      let body: unknown;
      if (path.endsWith("/devices")) {
        body = devices;
      } else if (path.includes("/view?version=guided")) {
        body = guidedKettle;
      } else if (path.includes("/view?version=rich")) {
        body = richKettle;
      } else if (path.includes("/categories/nas/compare")) {
        body = compareNas;
      } else {
        return new Response("not found", { status: 404 });
      }
      return new Response(JSON.stringify(body), {
        status: 200,
        headers: { "content-type": "application/json" },
      });
    })
  );
}

async function settle(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}

describe("app wiring", () => {
  beforeEach(() => {
    document.body.innerHTML = '<div id="root"></div>';
    stubFetch();
  });

  it("loads the device list on boot", async () => {
    bootstrap(document.getElementById("root")!, "http://svc");
    await settle();
    const rows = document.querySelectorAll(".device-row");
    expect(rows).toHaveLength(6);
  });

  it("opens the guided view when a device is selected", async () => {
    bootstrap(document.getElementById("root")!, "http://svc");
    await settle();
    const row = document.querySelector<HTMLElement>(
      `.device-row[data-device-id="${kettleId}"] .device-label`
    )!;
    row.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await settle();
    expect(document.querySelector(".guided-view")).not.toBeNull();
    expect(document.querySelector(".lamp.lit")).not.toBeNull();
  });

  it("switches to the rich view with the toggle", async () => {
    bootstrap(document.getElementById("root")!, "http://svc");
    await settle();
    document
      .querySelector<HTMLElement>(`.device-row[data-device-id="${kettleId}"] .device-label`)!
      .dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await settle();
    document
      .querySelector<HTMLElement>("#toggle-rich")!
      .dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await settle();
    expect(document.querySelector(".rich-view")).not.toBeNull();
    expect(document.querySelectorAll(".panel")).toHaveLength(2);
  });

  it("renders a comparison when a category is submitted", async () => {
    bootstrap(document.getElementById("root")!, "http://svc");
    await settle();
    const input = document.querySelector<HTMLInputElement>("#category-input")!;
    input.value = "nas";
    document
      .querySelector<HTMLFormElement>("#category-form")!
      .dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await settle();
    const colors = [...document.querySelectorAll<HTMLElement>(".compare-card")].map(
      (c) => c.dataset.color
    );
    expect(colors).toEqual(["Green", "Yellow", "Red"]);
  });

  it("shows an error banner when the service is unreachable", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => new Response("boom", { status: 500 }))
    );
    bootstrap(document.getElementById("root")!, "http://svc");
    await settle();
    expect(document.querySelector(".error-banner")).not.toBeNull();
  });
});
