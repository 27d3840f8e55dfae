/**
 * Canvas line chart: every case drawn as a polyline with gaps at missing
 * values, colored where the query response colors it, gray elsewhere.
 * Threshold lines/curves are overlaid and (when constant or rank) draggable.
 */

import { resolveToken, CONTEXT_COLOR, WINDOW_HIGHLIGHT } from "./palette.js";
import {
  LinearScale,
  scaleApply,
  timeCenterX,
  timeToX,
  xToTime,
  dragConstantThreshold,
  rankCountFromPointer,
} from "./scales.js";
import type { QueryRequest, QueryResponse, SeriesResponse } from "./types.js";

export interface DragResult {
  kind: "constant" | "rank" | "none";
  thresholdIndex: number; // 0 = two-range / lower, 1 = upper
  value: number;
}

export class LineChart {
  private valueScale: LinearScale = { domain: [0, 1], range: [0, 1] };
  private hoverId: string | null = null;
  private selection: Set<string> = new Set();

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly padding = { left: 44, right: 10, top: 10, bottom: 22 },
  ) {}

  setHighlight(hoverId: string | null, selection: Set<string>): void {
    this.hoverId = hoverId;
    this.selection = selection;
  }

  private plotArea(): { x: number; y: number; w: number; h: number } {
    return {
      x: this.padding.left,
      y: this.padding.top,
      w: this.canvas.width - this.padding.left - this.padding.right,
      h: this.canvas.height - this.padding.top - this.padding.bottom,
    };
  }

  private fitScale(series: SeriesResponse, response: QueryResponse | null): void {
    let lo = Infinity;
    let hi = -Infinity;
    for (const values of Object.values(series.series)) {
      for (const v of values) {
        if (v === null) continue;
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
    for (const curve of response?.threshold_curves ?? []) {
      for (const v of curve) {
        if (v === null) continue;
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
    if (!isFinite(lo)) {
      lo = 0;
      hi = 1;
    }
    const pad = (hi - lo || 1) * 0.05;
    const area = this.plotArea();
    this.valueScale = {
      domain: [lo - pad, hi + pad],
      range: [area.y + area.h, area.y], // y grows downward
    };
  }

  /** Pointer y -> data value, for threshold dragging. */
  valueAtY(y: number): number {
    return dragConstantThreshold(y, this.valueScale);
  }

  /** Pointer -> nearest top-n count for rank-threshold drags. */
  rankAtPointer(series: SeriesResponse, x: number, y: number, steps: number): number {
    const area = this.plotArea();
    const t = xToTime(x - area.x, steps, area.w);
    const atT = Object.values(series.series).map((vals) => vals[t]);
    return rankCountFromPointer(atT, this.valueAtY(y));
  }

  /** Distance from the pointer to a threshold curve, for hit testing. */
  curveDistance(curve: (number | null)[], x: number, y: number): number {
    const area = this.plotArea();
    const t = xToTime(x - area.x, curve.length, area.w);
    const v = curve[t];
    if (v === null) return Infinity;
    return Math.abs(scaleApply(this.valueScale, v) - y);
  }

  render(
    series: SeriesResponse,
    response: QueryResponse | null,
    sortWindow: [number, number] | null,
  ): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const area = this.plotArea();
    const steps = series.time_labels.length;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    this.fitScale(series, response);

    if (sortWindow) {
      ctx.fillStyle = WINDOW_HIGHLIGHT;
      const x0 = area.x + timeToX(sortWindow[0], steps, area.w);
      const x1 = area.x + timeToX(sortWindow[1] + 1, steps, area.w);
      ctx.fillRect(x0, area.y + area.h, x1 - x0, this.padding.bottom - 4);
    }

    this.drawAxes(ctx, series.time_labels);

    const visible = response ? new Set(Object.keys(response.cases)) : null;
    for (const [cid, values] of Object.entries(series.series)) {
      if (visible && !visible.has(cid)) continue;
      const segments = response?.cases[cid]?.segments ?? [
        { start: 0, end: steps - 1, color: "context" },
      ];
      const emphasized = this.hoverId === cid || this.selection.has(cid);
      for (const seg of segments) {
        ctx.strokeStyle = resolveToken(seg.color);
        ctx.lineWidth = emphasized ? 2.5 : seg.color === "context" ? 0.7 : 1.4;
        this.drawPolyline(ctx, values, seg.start, seg.end, steps, area);
      }
    }

    for (const curve of response?.threshold_curves ?? []) {
      this.drawCurve(ctx, curve, steps, area);
    }
  }

  private drawPolyline(
    ctx: CanvasRenderingContext2D,
    values: (number | null)[],
    start: number,
    end: number,
    steps: number,
    area: { x: number; w: number },
  ): void {
    ctx.beginPath();
    let penDown = false;
    // extend half a step into neighbors so adjacent segments connect
    const from = Math.max(0, start - 1);
    for (let t = from; t <= Math.min(values.length - 1, end + 1); t++) {
      const v = values[t];
      if (v === null) {
        penDown = false; // gap, no interpolation
        continue;
      }
      const px = area.x + timeCenterX(t, steps, area.w);
      const py = scaleApply(this.valueScale, v);
      if (penDown) {
        ctx.lineTo(px, py);
      } else {
        ctx.moveTo(px, py);
        penDown = true;
      }
    }
    ctx.stroke();
  }

  private drawCurve(
    ctx: CanvasRenderingContext2D,
    curve: (number | null)[],
    steps: number,
    area: { x: number; w: number },
  ): void {
    ctx.strokeStyle = "#333";
    ctx.lineWidth = 1.5;
    ctx.setLineDash([6, 3]);
    ctx.beginPath();
    let penDown = false;
    for (let t = 0; t < curve.length; t++) {
      const v = curve[t];
      if (v === null) {
        penDown = false;
        continue;
      }
      const px = area.x + timeCenterX(t, steps, area.w);
      const py = scaleApply(this.valueScale, v);
      if (penDown) ctx.lineTo(px, py);
      else {
        ctx.moveTo(px, py);
        penDown = true;
      }
    }
    ctx.stroke();
    ctx.setLineDash([]);
  }

  private drawAxes(ctx: CanvasRenderingContext2D, labels: string[]): void {
    const area = this.plotArea();
    ctx.strokeStyle = "#999";
    ctx.lineWidth = 1;
    ctx.strokeRect(area.x, area.y, area.w, area.h);
    ctx.fillStyle = "#555";
    ctx.font = "10px sans-serif";
    ctx.textAlign = "center";
    const tickEvery = Math.max(1, Math.ceil(labels.length / 10));
    for (let t = 0; t < labels.length; t += tickEvery) {
      const px = area.x + timeCenterX(t, labels.length, area.w);
      ctx.fillText(labels[t], px, area.y + area.h + 14);
    }
    ctx.textAlign = "right";
    const [d0, d1] = this.valueScale.domain;
    for (let i = 0; i <= 4; i++) {
      const v = d0 + ((d1 - d0) * i) / 4;
      ctx.fillText(v.toFixed(1), area.x - 4, scaleApply(this.valueScale, v) + 3);
    }
  }
}
