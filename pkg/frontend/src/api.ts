/** Typed client for the dispatch service. Only documented endpoints are
 * used; error bodies ({error: {code, message}}) become ApiError. */

import type {
  PlanResponse,
  ScenarioDoc,
  Suggestion,
  TranscriptDoc,
  TurnDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient {
  constructor(
    readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, "unreachable", `service unreachable: ${String(err)}`);
    }
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      throw new ApiError(response.status, "bad_json", "service returned non-JSON");
    }
    const errorBody = (body as { error?: { code?: string; message?: string } }).error;
    if (!response.ok || errorBody) {
      throw new ApiError(
        response.status,
        errorBody?.code ?? "http_error",
        errorBody?.message ?? `HTTP ${response.status}`,
      );
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  getScenario(): Promise<ScenarioDoc> {
    return this.request<ScenarioDoc>("/scenario");
  }

  plan(seed?: number): Promise<PlanResponse> {
    return this.post<PlanResponse>("/plan", seed === undefined ? {} : { seed });
  }

  async createSession(treeId?: string): Promise<string> {
    const body = await this.post<{ session_id: string }>(
      "/session",
      treeId === undefined ? {} : { tree_id: treeId },
    );
    return body.session_id;
  }

  query(sessionId: string, text: string): Promise<TurnDoc> {
    return this.post<TurnDoc>(`/session/${sessionId}/query`, { text });
  }

  transcript(sessionId: string): Promise<TranscriptDoc> {
    return this.request<TranscriptDoc>(`/session/${sessionId}`);
  }

  async suggestions(): Promise<Suggestion[]> {
    const body = await this.request<{ suggestions: Suggestion[] }>("/suggestions");
    return body.suggestions;
  }

  async rate(sessionId: string, turnIndex: number, stars: number): Promise<void> {
    await this.post(`/session/${sessionId}/turns/${turnIndex}/rating`, { stars });
  }
}
