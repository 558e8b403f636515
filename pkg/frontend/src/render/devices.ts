import { colorLabel, riskColor } from "../colors.js";
import type { DeviceListRow } from "../types.js";

/** Concise multi-device list; rows arrive pre-sorted (worst first). */
export function renderDeviceList(
  rows: DeviceListRow[],
  container: HTMLElement,
  onSelect: (deviceId: string) => void
): void {
  container.textContent = "";
  const list = document.createElement("ul");
  list.className = "device-list";
  for (const row of rows) {
    const item = document.createElement("li");
    item.className = "device-row";
    item.dataset.deviceId = row.device_id;

    const dot = document.createElement("span");
    dot.className = "risk-dot";
    if (row.color) {
      dot.style.background = riskColor(row.color);
      dot.title = colorLabel(row.color);
      dot.textContent = row.color === "Red" ? "●" : row.color === "Yellow" ? "◐" : "○";
    } else {
      dot.textContent = "?";
      dot.title = "not yet assessed";
    }

    const label = document.createElement("button");
    label.type = "button";
    label.className = "device-label";
    label.textContent = `${row.device_type} · ${row.network_address}`;
    label.addEventListener("click", () => onSelect(row.device_id));

    const meta = document.createElement("span");
    meta.className = "device-meta";
    meta.textContent = row.current_risk
      ? `${row.category} · risk ${row.current_risk}`
      : `${row.category} · unassessed`;

    item.append(dot, label, meta);
    list.appendChild(item);
  }
  container.appendChild(list);
}
