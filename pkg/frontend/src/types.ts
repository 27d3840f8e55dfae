/** Wire types for the query service. */

export type CriterionKind = "value" | "rank" | "net_change" | "pct_change" | "variance";

export interface Criterion {
  kind: CriterionKind;
  delta?: number | null;
  window?: number | null;
}

export type ThresholdSpec =
  | { kind: "constant"; value: number }
  | { kind: "aggregate_offset"; offset: number }
  | { kind: "ego_offset"; ego_id: string; offset: number };

export interface SortSpec {
  color: string;
  window?: [number, number] | null;
  group_mode?: boolean;
  hide_uncolored?: boolean;
}

export interface QueryRequest {
  criterion: Criterion;
  mode: "two_range" | "three_range";
  threshold?: ThresholdSpec;
  lower?: ThresholdSpec;
  upper?: ThresholdSpec;
  colors: Record<string, string>;
  filter?: { min_len?: number | null; max_len?: number | null };
  sort?: SortSpec | null;
}

export interface WireSegment {
  start: number;
  end: number;
  color: string; // color token or "context"
}

export interface QueryResponse {
  dataset_id: string;
  order: { category: string | null; cases: string[] }[];
  cases: Record<string, { segments: WireSegment[]; colored_length: Record<string, number> }>;
  threshold_curves: (number | null)[][];
  request: QueryRequest;
}

export interface DatasetMeta {
  id: string;
  time_labels: string[];
  cases: { id: string; name: string; category: string | null }[];
  case_count: number;
  timestep_count: number;
  categories: string[];
}

export interface SeriesResponse {
  time_labels: string[];
  series: Record<string, (number | null)[]>;
}
