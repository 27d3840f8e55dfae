/** App wiring: load a dataset, build the views, route interactions. */

import { ApiClient, ApiError } from "./api.js";
import { ControlPanel } from "./controls.js";
import {
  clickCase,
  emptySelection,
  overviewRowAt,
  scrollToRow,
  shiftClickCase,
  SelectionState,
} from "./interactions.js";
import { LineChart } from "./linechart.js";
import { displayOrder, QueryController } from "./state.js";
import { DetailView, OverviewView, flattenRows, DETAIL_ROW_HEIGHT } from "./timelines.js";
import type { DatasetMeta, QueryResponse, SeriesResponse } from "./types.js";

const api = new ApiClient("..");

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

async function pickDataset(): Promise<string> {
  const datasets = await api.listDatasets();
  if (datasets.length > 0) return datasets[0].id;
  byId("app").textContent =
    "No datasets loaded. Start the server with --data FILE or POST a CSV to /datasets.";
  throw new Error("no datasets");
}

async function start(): Promise<void> {
  const datasetId = await pickDataset();
  const meta: DatasetMeta = await api.metadata(datasetId);
  const series: SeriesResponse = await api.series(datasetId);
  const steps = meta.time_labels.length;

  const chartCanvas = byId<HTMLCanvasElement>("linechart");
  const detailCanvas = byId<HTMLCanvasElement>("detail");
  const overviewCanvas = byId<HTMLCanvasElement>("overview");
  overviewCanvas.height = Math.max(meta.case_count * 2, 100);

  const chart = new LineChart(chartCanvas);
  const detail = new DetailView(detailCanvas);
  const overview = new OverviewView(overviewCanvas);

  let selection: SelectionState = emptySelection();
  let hoverId: string | null = null;
  let response: QueryResponse | null = null;

  const redraw = () => {
    chart.setHighlight(hoverId, selection.selected);
    detail.hoverId = hoverId;
    detail.selection = selection.selected;
    chart.render(series, response, panel.sortWindow());
    if (response) {
      const rows = flattenRows(response);
      detail.render(response, steps, panel.sortWindow());
      const [first, last] = detail.visibleRange(rows.length);
      overview.render(response, steps, first, last, !!response.request.sort?.group_mode);
    }
  };

  const controller = new QueryController((req) => api.query(datasetId, req), {
    onResponse: (resp) => {
      response = resp;
      panel.showError(null);
      redraw();
    },
    onError: (error) => {
      // invalid requests (e.g. crossed thresholds) show inline; views keep
      // the previous valid state, so dragged thresholds visually snap back
      panel.showError(error instanceof ApiError ? error.message : String(error));
      redraw();
    },
  });

  const panel = new ControlPanel(byId("controls"), meta, () => {
    const request = panel.buildRequest();
    if (request) controller.submit(request);
  });

  const initial = panel.buildRequest();
  if (initial) {
    controller.request = initial;
    await controller.send();
  }

  // -- threshold dragging on the line chart ---------------------------------
  let dragging: { curveIndex: number } | null = null;
  chartCanvas.addEventListener("pointerdown", (ev) => {
    if (!response) return;
    const rect = chartCanvas.getBoundingClientRect();
    const x = ev.clientX - rect.left;
    const y = ev.clientY - rect.top;
    const distances = response.threshold_curves.map((c) => chart.curveDistance(c, x, y));
    const nearest = distances.indexOf(Math.min(...distances));
    if (nearest >= 0 && distances[nearest] < 8) {
      dragging = { curveIndex: nearest };
      chartCanvas.setPointerCapture(ev.pointerId);
    }
  });
  chartCanvas.addEventListener("pointermove", (ev) => {
    if (!dragging || !response) return;
    const rect = chartCanvas.getBoundingClientRect();
    const x = ev.clientX - rect.left;
    const y = ev.clientY - rect.top;
    const request = controller.request;
    if (!request) return;
    if (request.criterion.kind === "rank" && request.mode === "two_range") {
      const n = chart.rankAtPointer(series, x, y, steps);
      panel.setConstantThreshold(0, n);
    } else {
      panel.setConstantThreshold(dragging.curveIndex, chart.valueAtY(y));
    }
    const next = panel.buildRequest();
    if (next) controller.submit(next);
  });
  chartCanvas.addEventListener("pointerup", () => {
    dragging = null;
  });

  // -- detail view: wheel scroll, click/shift-click select, hover -----------
  detailCanvas.addEventListener("wheel", (ev) => {
    if (!response) return;
    ev.preventDefault();
    const rows = flattenRows(response);
    const maxScroll = Math.max(0, rows.length * DETAIL_ROW_HEIGHT - detailCanvas.height);
    detail.scrollTop = Math.max(0, Math.min(maxScroll, detail.scrollTop + ev.deltaY));
    redraw();
  });
  detailCanvas.addEventListener("click", (ev) => {
    if (!response) return;
    const rect = detailCanvas.getBoundingClientRect();
    const idx = detail.rowAt(ev.clientY - rect.top, flattenRows(response).length);
    if (idx === null) return;
    const order = displayOrder(response);
    selection = ev.shiftKey
      ? shiftClickCase(selection, order[idx], order)
      : clickCase(selection, order[idx]);
    redraw();
  });
  detailCanvas.addEventListener("pointermove", (ev) => {
    if (!response || dragging) return;
    const rect = detailCanvas.getBoundingClientRect();
    const idx = detail.rowAt(ev.clientY - rect.top, flattenRows(response).length);
    hoverId = idx === null ? null : displayOrder(response)[idx];
    redraw();
  });

  // -- overview: hover highlights, double-click scrolls the detail view -----
  overviewCanvas.addEventListener("pointermove", (ev) => {
    if (!response) return;
    const rect = overviewCanvas.getBoundingClientRect();
    const idx = overview.rowAt(ev.clientY - rect.top, flattenRows(response).length);
    hoverId = idx === null ? null : displayOrder(response)[idx];
    redraw();
  });
  overviewCanvas.addEventListener("dblclick", (ev) => {
    if (!response) return;
    const rect = overviewCanvas.getBoundingClientRect();
    const rows = flattenRows(response);
    const idx = overviewRowAt(ev.clientY - rect.top, 2, rows.length);
    detail.scrollTop = scrollToRow(
      idx,
      DETAIL_ROW_HEIGHT,
      detailCanvas.height,
      rows.length * DETAIL_ROW_HEIGHT,
    );
    redraw();
  });
  overviewCanvas.addEventListener("click", (ev) => {
    if (!response) return;
    const rect = overviewCanvas.getBoundingClientRect();
    const idx = overview.rowAt(ev.clientY - rect.top, flattenRows(response).length);
    if (idx === null) return;
    const order = displayOrder(response);
    selection = ev.shiftKey
      ? shiftClickCase(selection, order[idx], order)
      : clickCase(selection, order[idx]);
    redraw();
  });

  redraw();
}

start().catch((error) => {
  console.error(error);
});
