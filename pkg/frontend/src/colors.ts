import type { Color } from "./types.js";

/** CSS color for a risk color word. */
export function riskColor(color: Color): string {
  switch (color) {
    case "Red":
      return "#e74c3c";
    case "Yellow":
      return "#f0b429";
    case "Green":
      return "#27ae60";
  }
}

/**
 * Text label shown next to every color badge. Color is never the only
 * channel: lamp position, badge text and this label stay in sync so the
 * UI works for color-blind users too.
 */
export function colorLabel(color: Color): string {
  return color.toUpperCase();
}

export const COLOR_ORDER: Color[] = ["Green", "Yellow", "Red"];

/** Sort rank: best (Green) first. */
export function colorRank(color: Color): number {
  return COLOR_ORDER.indexOf(color);
}
