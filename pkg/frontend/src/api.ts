import type { ApiErrorBody, CatalogResponse, SessionInfo } from "./types";

/** Error raised for any non-2xx response, carrying the service's stable code. */
export class ApiError extends Error {
  code: string;
  status: number;
  details: Record<string, unknown>;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.name = "ApiError";
    this.status = status;
    this.code = body.code;
    this.details = body.details ?? {};
  }
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!res.ok) {
      let body: ApiErrorBody;
      try {
        body = (await res.json()) as ApiErrorBody;
      } catch {
        body = { code: "unknown", message: `HTTP ${res.status}`, details: {} };
      }
      throw new ApiError(res.status, body);
    }
    return (await res.json()) as T;
  }

  getCatalog(): Promise<CatalogResponse> {
    return this.request("/catalog");
  }

  createSession(stakeholderId: string, educationLevel: string): Promise<SessionInfo> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify({
        stakeholder_id: stakeholderId,
        education_level: educationLevel,
      }),
    });
  }

  submitRatings(
    sessionId: string,
    ratings: { requirement_id: string; score: number }[],
  ): Promise<SessionInfo> {
    return this.request(`/sessions/${sessionId}/ratings`, {
      method: "POST",
      body: JSON.stringify({ ratings }),
    });
  }

  requestRecommendations(sessionId: string): Promise<SessionInfo> {
    return this.request(`/sessions/${sessionId}/recommendations`, {
      method: "POST",
    });
  }

  submitFeedback(
    sessionId: string,
    feedback: { requirement_id: string; stars: number }[],
  ): Promise<SessionInfo> {
    return this.request(`/sessions/${sessionId}/feedback`, {
      method: "POST",
      body: JSON.stringify({ feedback }),
    });
  }

  getSession(sessionId: string): Promise<SessionInfo> {
    return this.request(`/sessions/${sessionId}`);
  }
}
