import type {
  CompareResponse,
  DeviceListRow,
  GuidedPayload,
  RichPayload,
} from "./types.js";

/** Thin client for the assessment service; no state, no retries. */
export class ApiClient {
  constructor(private baseUrl: string) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await fetch(`${this.baseUrl}${path}`);
    if (!resp.ok) {
      const body = await resp.text();
      throw new Error(`GET ${path} failed (${resp.status}): ${body}`);
    }
    return (await resp.json()) as T;
  }

  listDevices(): Promise<{ devices: DeviceListRow[] }> {
    return this.get("/devices");
  }

  getView(deviceId: string, version: "guided"): Promise<GuidedPayload>;
  getView(deviceId: string, version: "rich"): Promise<RichPayload>;
  getView(deviceId: string, version: "guided" | "rich"): Promise<GuidedPayload | RichPayload> {
    return this.get(`/devices/${encodeURIComponent(deviceId)}/view?version=${version}`);
  }

  compareCategory(label: string, asOf?: string): Promise<CompareResponse> {
    const suffix = asOf ? `?as_of=${encodeURIComponent(asOf)}` : "";
    return this.get(`/categories/${encodeURIComponent(label)}/compare${suffix}`);
  }

  async assess(deviceId: string, asOf?: string): Promise<void> {
    const suffix = asOf ? `?as_of=${encodeURIComponent(asOf)}` : "";
    const resp = await fetch(
      `${this.baseUrl}/devices/${encodeURIComponent(deviceId)}/assess${suffix}`,
      { method: "POST" }
    );
    if (!resp.ok) {
      throw new Error(`assessment failed (${resp.status})`);
    }
  }
}
