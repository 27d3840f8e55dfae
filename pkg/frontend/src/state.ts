/**
 * Query state: one draft request, debounced submission, and latest-wins
 * response handling via sequence numbers. The transport is injectable so
 * tests can drive it without a server.
 */

import type { QueryRequest, QueryResponse } from "./types.js";

export type Transport = (request: QueryRequest) => Promise<QueryResponse>;

export interface ControllerOptions {
  debounceMs?: number;
  onResponse: (response: QueryResponse) => void;
  onError?: (error: unknown) => void;
}

export class QueryController {
  private seq = 0;
  private applied = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private readonly debounceMs: number;
  request: QueryRequest | null = null;
  lastResponse: QueryResponse | null = null;

  constructor(
    private readonly transport: Transport,
    private readonly options: ControllerOptions,
  ) {
    this.debounceMs = options.debounceMs ?? 60;
  }

  /** Replace the draft request and schedule a debounced submission. */
  submit(request: QueryRequest): void {
    this.request = request;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.send();
    }, this.debounceMs);
  }

  /** Submit immediately, bypassing the debounce (initial load). */
  async send(): Promise<void> {
    if (this.request === null) return;
    const mySeq = ++this.seq;
    try {
      const response = await this.transport(this.request);
      if (mySeq <= this.applied) return; // superseded: a newer response already landed
      this.applied = mySeq;
      this.lastResponse = response;
      this.options.onResponse(response);
    } catch (error) {
      if (mySeq > this.applied && this.options.onError) this.options.onError(error);
    }
  }
}

/** Display order flattened from the response groups. */
export function displayOrder(response: QueryResponse): string[] {
  return response.order.flatMap((group) => group.cases);
}

/** Per-timestep Low coverage across all cases, for monotonicity displays. */
export function lowCoverage(response: QueryResponse, lowColor: string): number {
  let total = 0;
  for (const entry of Object.values(response.cases)) {
    for (const seg of entry.segments) {
      if (seg.color === lowColor) total += seg.end - seg.start + 1;
    }
  }
  return total;
}
