/** Color tokens resolved to a colorblind-safe palette (Okabe-Ito based). */

export const PALETTE: Record<string, string> = {
  green: "#009E73",
  red: "#D55E00",
  blue: "#0072B2",
  orange: "#E69F00",
  purple: "#CC79A7",
  yellow: "#F0E442",
};

export const CONTEXT_COLOR = "#c8c8c8";
export const WINDOW_HIGHLIGHT = "rgba(240, 228, 66, 0.35)"; // yellow band on the axis

export function resolveToken(token: string): string {
  if (token === "context") return CONTEXT_COLOR;
  return PALETTE[token] ?? token;
}

/** Cycle of distinct hues for category legends in group mode. */
export const GROUP_LEGEND = [
  "#0072B2",
  "#E69F00",
  "#009E73",
  "#CC79A7",
  "#56B4E9",
  "#D55E00",
  "#F0E442",
];
