/**
 * Control panel: criterion picker, threshold editors (with ego picker and
 * offset sliders), per-range color and show/hide buttons, segment filter,
 * sort-by widget, time window, group and hide-uncolored toggles.
 * Every valid edit produces a fresh QueryRequest via onChange.
 */

import { PALETTE } from "./palette.js";
import type { Criterion, DatasetMeta, QueryRequest, ThresholdSpec } from "./types.js";

const COLOR_CHOICES = ["green", "red", "blue", "orange", "purple", "context", "hidden"];
const RANGES2 = ["low", "high"];
const RANGES3 = ["low", "mid", "high"];

interface ThresholdEditor {
  root: HTMLElement;
  get(): ThresholdSpec | null;
  setConstant(value: number): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

export class ControlPanel {
  private criterionSel = el("select");
  private deltaInput = el("input", { type: "number", min: "1", value: "1" });
  private windowInput = el("input", { type: "number", min: "1", step: "2", value: "5" });
  private modeSel = el("select");
  private thresholdEditors: ThresholdEditor[] = [];
  private colorSelects = new Map<string, HTMLSelectElement>();
  private eyeButtons = new Map<string, HTMLButtonElement>();
  private hiddenRanges = new Set<string>();
  private minLen = el("input", { type: "number", min: "1" });
  private maxLen = el("input", { type: "number", min: "1" });
  private sortColorSel = el("select");
  private windowStart = el("select");
  private windowEnd = el("select");
  private groupToggle = el("input", { type: "checkbox" });
  private hideUncolored = el("input", { type: "checkbox" });
  private errorBox = el("div", { class: "error" });
  private thresholdRow = el("div", { class: "row" });
  private rangeRows = el("div");

  constructor(
    private readonly container: HTMLElement,
    private readonly meta: DatasetMeta,
    private readonly onChange: () => void,
  ) {
    this.build();
  }

  private build(): void {
    const c = this.container;
    for (const kind of ["value", "rank", "net_change", "pct_change", "variance"]) {
      this.criterionSel.append(el("option", { value: kind }, kind.replace("_", " ")));
    }
    for (const mode of ["two_range", "three_range"]) {
      this.modeSel.append(el("option", { value: mode }, mode === "two_range" ? "one threshold" : "two thresholds"));
    }
    for (const sel of [this.windowStart, this.windowEnd]) {
      sel.append(el("option", { value: "" }, "(full axis)"));
      this.meta.time_labels.forEach((label, i) =>
        sel.append(el("option", { value: String(i) }, label)),
      );
    }

    c.append(
      this.labeled("Criterion", this.criterionSel),
      this.labeled("Lookback Δ", this.deltaInput),
      this.labeled("Variance window", this.windowInput),
      this.labeled("Query mode", this.modeSel),
      this.thresholdRow,
      this.rangeRows,
      this.labeled("Min segment", this.minLen),
      this.labeled("Max segment", this.maxLen),
      this.labeled("Sort by", this.sortColorSel),
      this.labeled("Window from", this.windowStart),
      this.labeled("Window to", this.windowEnd),
      this.labeled("Group by category", this.groupToggle),
      this.labeled("Hide uncolored", this.hideUncolored),
      this.errorBox,
    );

    this.rebuildThresholds();
    this.rebuildRanges();

    for (const node of [
      this.criterionSel, this.deltaInput, this.windowInput,
      this.minLen, this.maxLen, this.sortColorSel, this.windowStart,
      this.windowEnd, this.groupToggle, this.hideUncolored,
    ]) {
      node.addEventListener("change", () => this.onChange());
    }
    this.modeSel.addEventListener("change", () => {
      this.rebuildThresholds();
      this.rebuildRanges();
      this.onChange();
    });
  }

  private labeled(text: string, widget: HTMLElement): HTMLElement {
    const row = el("div", { class: "row" });
    row.append(el("label", {}, text), widget);
    return row;
  }

  private isThreeRange(): boolean {
    return this.modeSel.value === "three_range";
  }

  private makeThresholdEditor(defaultValue: number): ThresholdEditor {
    const root = el("span", { class: "threshold-editor" });
    const kindSel = el("select");
    for (const [v, t] of [["constant", "constant"], ["aggregate_offset", "average ±"], ["ego_offset", "ego ±"]]) {
      kindSel.append(el("option", { value: v }, t));
    }
    const valueInput = el("input", { type: "number", value: String(defaultValue), step: "any" });
    const offsetSlider = el("input", { type: "range", min: "-20", max: "20", step: "0.5", value: "0" });
    const offsetLabel = el("span", {}, "0");
    const egoSel = el("select");
    for (const cse of this.meta.cases) egoSel.append(el("option", { value: cse.id }, cse.name));
    root.append(kindSel, valueInput, egoSel, offsetSlider, offsetLabel);

    const sync = () => {
      const kind = kindSel.value;
      valueInput.style.display = kind === "constant" ? "" : "none";
      egoSel.style.display = kind === "ego_offset" ? "" : "none";
      offsetSlider.style.display = kind === "constant" ? "none" : "";
      offsetLabel.style.display = kind === "constant" ? "none" : "";
    };
    sync();
    kindSel.addEventListener("change", () => {
      sync();
      this.onChange();
    });
    valueInput.addEventListener("change", () => this.onChange());
    egoSel.addEventListener("change", () => this.onChange());
    offsetSlider.addEventListener("input", () => {
      offsetLabel.textContent = offsetSlider.value;
      this.onChange();
    });

    return {
      root,
      get: (): ThresholdSpec | null => {
        if (kindSel.value === "constant") {
          const v = parseFloat(valueInput.value);
          if (!isFinite(v)) return null;
          return { kind: "constant", value: v };
        }
        const offset = parseFloat(offsetSlider.value) || 0;
        if (kindSel.value === "aggregate_offset") return { kind: "aggregate_offset", offset };
        return { kind: "ego_offset", ego_id: egoSel.value, offset };
      },
      setConstant: (value: number) => {
        kindSel.value = "constant";
        valueInput.value = String(Math.round(value * 100) / 100);
        sync();
      },
    };
  }

  private rebuildThresholds(): void {
    this.thresholdRow.replaceChildren(el("label", {}, "Thresholds"));
    this.thresholdEditors = this.isThreeRange()
      ? [this.makeThresholdEditor(40), this.makeThresholdEditor(60)]
      : [this.makeThresholdEditor(50)];
    for (const editor of this.thresholdEditors) this.thresholdRow.append(editor.root);
  }

  private rebuildRanges(): void {
    this.rangeRows.replaceChildren();
    this.colorSelects.clear();
    this.eyeButtons.clear();
    const defaults: Record<string, string> = { low: "green", mid: "context", high: "context" };
    for (const range of this.isThreeRange() ? RANGES3 : RANGES2) {
      const sel = el("select");
      for (const token of COLOR_CHOICES) sel.append(el("option", { value: token }, token));
      sel.value = defaults[range];
      sel.addEventListener("change", () => this.onChange());
      const eye = el("button", { class: "eye", title: "show/hide this range" }, "👁");
      eye.addEventListener("click", () => {
        if (this.hiddenRanges.has(range)) this.hiddenRanges.delete(range);
        else this.hiddenRanges.add(range);
        eye.classList.toggle("off", this.hiddenRanges.has(range));
        this.onChange();
      });
      this.colorSelects.set(range, sel);
      this.eyeButtons.set(range, eye);
      const row = this.labeled(`Range ${range}`, sel);
      row.append(eye);
      this.rangeRows.append(row);
    }
    this.refreshSortChoices();
  }

  private refreshSortChoices(): void {
    const current = this.sortColorSel.value;
    this.sortColorSel.replaceChildren(el("option", { value: "" }, "(dataset order)"));
    for (const token of this.assignedTokens()) {
      this.sortColorSel.append(el("option", { value: token }, token));
    }
    this.sortColorSel.value = [...this.assignedTokens()].includes(current) ? current : "";
  }

  private assignedTokens(): string[] {
    const tokens: string[] = [];
    for (const [range, sel] of this.colorSelects) {
      const token = this.hiddenRanges.has(range) ? "hidden" : sel.value;
      if (token !== "context" && token !== "hidden" && !tokens.includes(token)) tokens.push(token);
    }
    return tokens;
  }

  showError(message: string | null): void {
    this.errorBox.textContent = message ?? "";
  }

  /** Drag feedback: write a new constant value back into a threshold editor. */
  setConstantThreshold(index: number, value: number): void {
    this.thresholdEditors[index]?.setConstant(value);
  }

  /** null when the current widget state is not a valid request. */
  buildRequest(): QueryRequest | null {
    this.refreshSortChoices();
    const criterion: Criterion = { kind: this.criterionSel.value as Criterion["kind"] };
    if (criterion.kind === "net_change" || criterion.kind === "pct_change") {
      const d = parseInt(this.deltaInput.value, 10);
      if (!(d >= 1)) return null;
      criterion.delta = d;
    }
    if (criterion.kind === "variance") {
      const w = parseInt(this.windowInput.value, 10);
      if (!(w >= 1) || w % 2 === 0) return null;
      criterion.window = w;
    }

    const specs = this.thresholdEditors.map((e) => e.get());
    if (specs.some((s) => s === null)) return null;

    const colors: Record<string, string> = {};
    for (const [range, sel] of this.colorSelects) {
      colors[range] = this.hiddenRanges.has(range) ? "hidden" : sel.value;
    }
    if (!Object.values(colors).some((t) => t !== "context" && t !== "hidden")) return null;

    const request: QueryRequest = {
      criterion,
      mode: this.isThreeRange() ? "three_range" : "two_range",
      colors,
      filter: {
        min_len: parseInt(this.minLen.value, 10) || null,
        max_len: parseInt(this.maxLen.value, 10) || null,
      },
      sort: null,
    };
    if (this.isThreeRange()) {
      request.lower = specs[0]!;
      request.upper = specs[1]!;
    } else {
      request.threshold = specs[0]!;
    }

    if (this.sortColorSel.value !== "") {
      const w0 = this.windowStart.value === "" ? null : parseInt(this.windowStart.value, 10);
      const w1 = this.windowEnd.value === "" ? null : parseInt(this.windowEnd.value, 10);
      request.sort = {
        color: this.sortColorSel.value,
        window: w0 !== null && w1 !== null && w0 <= w1 ? [w0, w1] : null,
        group_mode: this.groupToggle.checked,
        hide_uncolored: this.hideUncolored.checked,
      };
    }
    return request;
  }

  sortWindow(): [number, number] | null {
    const req = this.buildRequest();
    return req?.sort?.window ?? null;
  }

  /** Sync the window selectors from an axis brush. */
  setWindow(w0: number, w1: number): void {
    this.windowStart.value = String(w0);
    this.windowEnd.value = String(w1);
  }
}
