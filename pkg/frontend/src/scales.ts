/** Pure scale and geometry helpers shared by the canvas renderers and tests. */

import type { WireSegment } from "./types.js";

export interface LinearScale {
  domain: [number, number];
  range: [number, number];
}

export function scaleApply(s: LinearScale, v: number): number {
  const [d0, d1] = s.domain;
  const [r0, r1] = s.range;
  if (d1 === d0) return (r0 + r1) / 2;
  return r0 + ((v - d0) / (d1 - d0)) * (r1 - r0);
}

export function scaleInvert(s: LinearScale, px: number): number {
  const [d0, d1] = s.domain;
  const [r0, r1] = s.range;
  if (r1 === r0) return d0;
  return d0 + ((px - r0) / (r1 - r0)) * (d1 - d0);
}

/** Left pixel edge of timestep t when T steps fill `width` pixels. */
export function timeToX(t: number, steps: number, width: number): number {
  return (t / steps) * width;
}

/** Center x of timestep t (polyline vertices sit at band centers). */
export function timeCenterX(t: number, steps: number, width: number): number {
  return ((t + 0.5) / steps) * width;
}

/** Nearest timestep for a pointer x position; clamped to the axis. */
export function xToTime(x: number, steps: number, width: number): number {
  const t = Math.floor((x / width) * steps);
  return Math.max(0, Math.min(steps - 1, t));
}

export interface PixelRun {
  x0: number;
  x1: number;
  color: string;
}

/**
 * Map run-length segments onto pixel runs. Boundaries land exactly on the
 * time scale: segment [start, end] spans [x(start), x(end + 1)).
 */
export function segmentPixelRuns(
  segments: WireSegment[],
  steps: number,
  width: number,
): PixelRun[] {
  return segments.map((seg) => ({
    x0: timeToX(seg.start, steps, width),
    x1: timeToX(seg.end + 1, steps, width),
    color: seg.color,
  }));
}

/** Constant-threshold drag: invert the pointer's y through the value scale. */
export function dragConstantThreshold(yPx: number, valueScale: LinearScale): number {
  return scaleInvert(valueScale, yPx);
}

/**
 * Rank-curve drag: the pointer maps to the nearest integer n whose top-n
 * envelope passes closest, i.e. 1 + count of values strictly above the
 * pointer's value at that timestep.
 */
export function rankCountFromPointer(valuesAtT: (number | null)[], value: number): number {
  const above = valuesAtT.filter((v) => v !== null && v > value).length;
  return Math.max(1, above + 1);
}

/** Rows [first, last] (inclusive) visible in a scrolled, row-based viewport. */
export function visibleRowRange(
  scrollTop: number,
  viewportHeight: number,
  rowHeight: number,
  rowCount: number,
): [number, number] {
  if (rowCount === 0 || rowHeight <= 0) return [0, -1];
  const first = Math.max(0, Math.floor(scrollTop / rowHeight));
  const last = Math.min(rowCount - 1, Math.ceil((scrollTop + viewportHeight) / rowHeight) - 1);
  return [first, last];
}
