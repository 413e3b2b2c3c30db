// Client for the local explorer API. The fetch implementation is injectable
// so tests can drive it without a network.

import type { ResultDocument, ScenarioDocument, WhatIfResponse } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly body: unknown = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function readJson(response: Response): Promise<unknown> {
  try {
    return await response.json();
  } catch {
    return null;
  }
}

export class ExplorerClient {
  constructor(
    readonly baseUrl: string = "http://127.0.0.1:8000",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    } catch (err) {
      throw new ApiError(0, `network failure talking to ${path}: ${err}`);
    }
    const body = await readJson(response);
    if (!response.ok) {
      const detail =
        body && typeof body === "object" && "error" in body
          ? String((body as { error: unknown }).error)
          : `HTTP ${response.status}`;
      throw new ApiError(response.status, detail, body);
    }
    return body;
  }

  private post(path: string, payload: unknown): Promise<unknown> {
    return this.request(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  evaluate(scenario: ScenarioDocument): Promise<ResultDocument> {
    return this.post("/evaluate", scenario) as Promise<ResultDocument>;
  }

  whatIf(scenario: ScenarioDocument, agent: number): Promise<WhatIfResponse> {
    return this.post("/whatif", { scenario, agent }) as Promise<WhatIfResponse>;
  }

  async catalog(): Promise<string[]> {
    const body = (await this.request("/catalog")) as { actions: string[] };
    return body.actions;
  }

  fixtures(): Promise<Record<string, ScenarioDocument>> {
    return this.request("/fixtures") as Promise<Record<string, ScenarioDocument>>;
  }
}
