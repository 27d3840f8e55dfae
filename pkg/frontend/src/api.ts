/** Thin fetch client for the query service. */

import type { DatasetMeta, QueryRequest, QueryResponse, SeriesResponse } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public reason: string,
    detail: string,
  ) {
    super(`${reason}: ${detail}`);
  }
}

async function check(resp: Response): Promise<any> {
  const body = await resp.json();
  if (!resp.ok) {
    throw new ApiError(resp.status, body.reason ?? "error", body.detail ?? resp.statusText);
  }
  return body;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  async listDatasets(): Promise<{ id: string; case_count: number; timestep_count: number }[]> {
    const body = await check(await fetch(`${this.base}/datasets`));
    return body.datasets;
  }

  async uploadDataset(csv: string, hasCategoryColumn: boolean): Promise<string> {
    const body = await check(
      await fetch(`${this.base}/datasets?has_category_column=${hasCategoryColumn}`, {
        method: "POST",
        body: csv,
      }),
    );
    return body.dataset_id;
  }

  async metadata(datasetId: string): Promise<DatasetMeta> {
    return check(await fetch(`${this.base}/datasets/${datasetId}`));
  }

  async series(datasetId: string): Promise<SeriesResponse> {
    return check(await fetch(`${this.base}/datasets/${datasetId}/series`));
  }

  async query(datasetId: string, request: QueryRequest): Promise<QueryResponse> {
    return check(
      await fetch(`${this.base}/datasets/${datasetId}/query`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      }),
    );
  }
}
