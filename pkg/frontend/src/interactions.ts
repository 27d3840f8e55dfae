/** Selection, scrolling, and hover-preview logic, kept pure for testing. */

export interface SelectionState {
  selected: Set<string>;
  lastClicked: string | null;
}

export function emptySelection(): SelectionState {
  return { selected: new Set(), lastClicked: null };
}

/** Plain click: toggle membership and remember the anchor. */
export function clickCase(state: SelectionState, caseId: string): SelectionState {
  const selected = new Set(state.selected);
  if (selected.has(caseId)) {
    selected.delete(caseId);
  } else {
    selected.add(caseId);
  }
  return { selected, lastClicked: caseId };
}

/**
 * Shift-click bulk selection: select every case between the previous click
 * and this one, inclusive, in display order.
 */
export function shiftClickCase(
  state: SelectionState,
  caseId: string,
  displayOrder: string[],
): SelectionState {
  if (state.lastClicked === null) return clickCase(state, caseId);
  const a = displayOrder.indexOf(state.lastClicked);
  const b = displayOrder.indexOf(caseId);
  if (a < 0 || b < 0) return clickCase(state, caseId);
  const [lo, hi] = a <= b ? [a, b] : [b, a];
  const selected = new Set(state.selected);
  for (let i = lo; i <= hi; i++) selected.add(displayOrder[i]);
  return { selected, lastClicked: caseId };
}

/**
 * Scroll offset that brings a row into view, centered when possible.
 * Used by double-click-in-overview navigation.
 */
export function scrollToRow(
  rowIndex: number,
  rowHeight: number,
  viewportHeight: number,
  contentHeight: number,
): number {
  const target = rowIndex * rowHeight - (viewportHeight - rowHeight) / 2;
  return Math.max(0, Math.min(target, Math.max(0, contentHeight - viewportHeight)));
}

/** Overview double-click: which row sits under the pointer. */
export function overviewRowAt(y: number, rowHeight: number, rowCount: number): number {
  return Math.max(0, Math.min(rowCount - 1, Math.floor(y / rowHeight)));
}

/** Preview overlays appear only for cases outside the detail viewport. */
export function needsPreview(rowIndex: number, firstVisible: number, lastVisible: number): boolean {
  return rowIndex < firstVisible || rowIndex > lastVisible;
}

/** The hovered case plus its neighbors, clipped to the display order. */
export function previewRows(rowIndex: number, rowCount: number, neighbors = 2): number[] {
  const rows: number[] = [];
  for (let i = rowIndex - neighbors; i <= rowIndex + neighbors; i++) {
    if (i >= 0 && i < rowCount) rows.push(i);
  }
  return rows;
}
