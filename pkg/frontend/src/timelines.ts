/**
 * Juxtaposed timeline views: a labeled, scrollable detail view and a
 * zoomed-out overview of every visible case. Both render on canvas; the
 * detail view only draws the rows inside the viewport.
 */

import { resolveToken, GROUP_LEGEND, WINDOW_HIGHLIGHT } from "./palette.js";
import { segmentPixelRuns, visibleRowRange, timeToX } from "./scales.js";
import { needsPreview, previewRows } from "./interactions.js";
import type { QueryResponse } from "./types.js";

export const DETAIL_ROW_HEIGHT = 18;
export const OVERVIEW_ROW_HEIGHT = 2;
const LABEL_WIDTH = 110;

export interface RowInfo {
  caseId: string;
  category: string | null;
  groupIndex: number;
}

export function flattenRows(response: QueryResponse): RowInfo[] {
  const rows: RowInfo[] = [];
  response.order.forEach((group, groupIndex) => {
    for (const caseId of group.cases) {
      rows.push({ caseId, category: group.category, groupIndex });
    }
  });
  return rows;
}

export class DetailView {
  scrollTop = 0;
  hoverId: string | null = null;
  selection: Set<string> = new Set();

  constructor(private readonly canvas: HTMLCanvasElement) {}

  contentHeight(rows: RowInfo[]): number {
    return rows.length * DETAIL_ROW_HEIGHT;
  }

  visibleRange(rowCount: number): [number, number] {
    return visibleRowRange(this.scrollTop, this.canvas.height, DETAIL_ROW_HEIGHT, rowCount);
  }

  render(response: QueryResponse, steps: number, sortWindow: [number, number] | null): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    const rows = flattenRows(response);
    if (rows.length === 0) {
      ctx.fillStyle = "#777";
      ctx.font = "13px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(
        "No cases match; adjust thresholds or show more ranges.",
        this.canvas.width / 2,
        this.canvas.height / 2,
      );
      return;
    }
    const barWidth = this.canvas.width - LABEL_WIDTH;
    const [first, last] = this.visibleRange(rows.length);

    if (sortWindow) {
      ctx.fillStyle = WINDOW_HIGHLIGHT;
      const x0 = LABEL_WIDTH + timeToX(sortWindow[0], steps, barWidth);
      const x1 = LABEL_WIDTH + timeToX(sortWindow[1] + 1, steps, barWidth);
      ctx.fillRect(x0, 0, x1 - x0, this.canvas.height);
    }

    for (let i = first; i <= last; i++) {
      const y = i * DETAIL_ROW_HEIGHT - this.scrollTop;
      this.drawRow(ctx, response, rows[i], y, steps, barWidth, false);
    }

    // hover preview: overlay the hovered case and neighbors when off-screen
    if (this.hoverId !== null) {
      const idx = rows.findIndex((r) => r.caseId === this.hoverId);
      if (idx >= 0 && needsPreview(idx, first, last)) {
        const overlay = previewRows(idx, rows.length);
        const top = this.canvas.height - overlay.length * DETAIL_ROW_HEIGHT - 4;
        ctx.fillStyle = "rgba(255,255,255,0.95)";
        ctx.fillRect(0, top - 2, this.canvas.width, overlay.length * DETAIL_ROW_HEIGHT + 6);
        ctx.strokeStyle = "#666";
        ctx.strokeRect(0.5, top - 1.5, this.canvas.width - 1, overlay.length * DETAIL_ROW_HEIGHT + 4);
        overlay.forEach((rowIdx, k) => {
          this.drawRow(ctx, response, rows[rowIdx], top + k * DETAIL_ROW_HEIGHT, steps, barWidth, true);
        });
      }
    }
  }

  private drawRow(
    ctx: CanvasRenderingContext2D,
    response: QueryResponse,
    row: RowInfo,
    y: number,
    steps: number,
    barWidth: number,
    isPreview: boolean,
  ): void {
    const entry = response.cases[row.caseId];
    const emphasized = this.hoverId === row.caseId || this.selection.has(row.caseId);
    if (emphasized && !isPreview) {
      ctx.fillStyle = "rgba(0, 114, 178, 0.15)";
      ctx.fillRect(0, y, this.canvas.width, DETAIL_ROW_HEIGHT);
    }
    ctx.fillStyle = emphasized ? "#000" : "#333";
    ctx.font = `${emphasized ? "bold " : ""}11px sans-serif`;
    ctx.textAlign = "left";
    ctx.fillText(row.caseId, 4, y + DETAIL_ROW_HEIGHT - 5, LABEL_WIDTH - 8);
    for (const run of segmentPixelRuns(entry.segments, steps, barWidth)) {
      ctx.fillStyle = resolveToken(run.color);
      ctx.fillRect(LABEL_WIDTH + run.x0, y + 3, run.x1 - run.x0, DETAIL_ROW_HEIGHT - 6);
    }
  }

  rowAt(y: number, rowCount: number): number | null {
    const idx = Math.floor((y + this.scrollTop) / DETAIL_ROW_HEIGHT);
    return idx >= 0 && idx < rowCount ? idx : null;
  }
}

export class OverviewView {
  constructor(private readonly canvas: HTMLCanvasElement) {}

  render(
    response: QueryResponse,
    steps: number,
    detailFirst: number,
    detailLast: number,
    groupMode: boolean,
  ): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    const rows = flattenRows(response);
    const barWidth = this.canvas.width - (groupMode ? 8 : 0);

    rows.forEach((row, i) => {
      const y = i * OVERVIEW_ROW_HEIGHT;
      const entry = response.cases[row.caseId];
      for (const run of segmentPixelRuns(entry.segments, steps, barWidth)) {
        ctx.fillStyle = resolveToken(run.color);
        ctx.fillRect(run.x0, y, run.x1 - run.x0, OVERVIEW_ROW_HEIGHT);
      }
      if (groupMode) {
        // legend swatch on the right of each timeline marks its group
        ctx.fillStyle = GROUP_LEGEND[row.groupIndex % GROUP_LEGEND.length];
        ctx.fillRect(barWidth, y, 8, OVERVIEW_ROW_HEIGHT);
      }
    });

    // highlight the slice currently visible in the detail view
    if (detailLast >= detailFirst) {
      ctx.strokeStyle = "#0072B2";
      ctx.lineWidth = 1;
      ctx.strokeRect(
        0.5,
        detailFirst * OVERVIEW_ROW_HEIGHT + 0.5,
        this.canvas.width - 1,
        (detailLast - detailFirst + 1) * OVERVIEW_ROW_HEIGHT - 1,
      );
    }
  }

  rowAt(y: number, rowCount: number): number | null {
    const idx = Math.floor(y / OVERVIEW_ROW_HEIGHT);
    return idx >= 0 && idx < rowCount ? idx : null;
  }
}
