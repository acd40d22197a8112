// Thin fetch wrapper around the counting service. All solver logic stays
// on the server; this module only moves JSON.

import type {
  ElectionSnapshot,
  FeasibilityJson,
  CandidateJson,
  ReportBundle,
  WhatIfRequestJson,
  WhatIfResponseJson,
} from "./types.js";

/** Non-2xx response, with the parsed error payload when there was one. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`service returned ${status}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class WorkbenchApi {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    // trailing slash would double up when joining paths
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  getElection(): Promise<ElectionSnapshot> {
    return this.getJson<ElectionSnapshot>("/election");
  }

  getOutcome(): Promise<ReportBundle> {
    return this.getJson<ReportBundle>("/outcome");
  }

  postWhatIf(request: WhatIfRequestJson): Promise<WhatIfResponseJson> {
    return this.postJson<WhatIfResponseJson>("/whatif", request);
  }

  postFeasibility(pool: CandidateJson[]): Promise<FeasibilityJson> {
    return this.postJson<FeasibilityJson>("/feasibility", { pool });
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.base + path);
    return this.unwrap<T>(response);
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return this.unwrap<T>(response);
  }

  private async unwrap<T>(response: Response): Promise<T> {
    if (!response.ok) {
      let detail: unknown = null;
      try {
        detail = await response.json();
      } catch {
        // non-JSON error body; status alone will have to do
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }
}
